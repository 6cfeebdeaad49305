//! Permutations and permutation groups with deterministic stabilizer chains.
//!
//! Points are 0-based `u32` indices and permutations act on the right:
//! `p^g = g[p]`, and `(g.then(h))[p] = h[g[p]]`.  Groups carry a
//! base/strong-generating-set chain built by a deterministic Schreier-Sims
//! procedure (base points are always the smallest moved point available, and
//! generators are processed in insertion order), so two runs over the same
//! generator list produce identical chains.  When a target order is known in
//! advance the chain construction stops as soon as the product of the
//! fundamental orbit lengths reaches it; the product can never exceed the
//! true order, so reaching the target certifies the chain.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::Error;

/// A permutation of 0..degree, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u32>,
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl Perm {
    pub fn identity(degree: u32) -> Perm {
        Perm { img: (0..degree).collect() }
    }

    pub fn from_images(img: Vec<u32>) -> Result<Perm, Error> {
        let n = img.len() as u32;
        let mut seen = vec![false; img.len()];
        for &x in &img {
            if x >= n || seen[x as usize] {
                return Err(Error::BadPerm("image table is not a bijection".into()));
            }
            seen[x as usize] = true;
        }
        Ok(Perm { img })
    }

    pub fn degree(&self) -> u32 {
        self.img.len() as u32
    }

    pub fn apply(&self, p: u32) -> u32 {
        self.img[p as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.img
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// First self, then other.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { img: self.img.iter().map(|&x| other.img[x as usize]).collect() }
    }

    /// Replaces self with self-then-other without allocating.
    pub fn then_in_place(&mut self, other: &Perm) {
        for x in self.img.iter_mut() {
            *x = other.img[*x as usize];
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0u32; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x as usize] = i as u32;
        }
        Perm { img }
    }

    /// g^-1 * self * g.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        let mut img = vec![0u32; self.img.len()];
        for p in 0..self.img.len() {
            // (p^g^-1)^self^g, computed forward: image of p^g is (p^self)^g.
            img[g.img[p] as usize] = g.img[self.img[p] as usize];
        }
        Perm { img }
    }

    pub fn order(&self) -> u128 {
        let mut seen = vec![false; self.img.len()];
        let mut ord: u128 = 1;
        for start in 0..self.img.len() {
            if seen[start] {
                continue;
            }
            let mut len: u128 = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.img[p] as usize;
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.img.iter().enumerate().find(|&(i, &x)| i as u32 != x).map(|(i, _)| i as u32)
    }

    /// Cycle notation with 1-based points, fixed points omitted; the
    /// identity prints as "()".
    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.img.len()];
        let mut out = String::new();
        for start in 0..self.img.len() {
            if seen[start] || self.img[start] as usize == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    out.push(',');
                }
                out.push_str(&(p + 1).to_string());
                first = false;
                p = self.img[p] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// Parses 1-based cycle notation, e.g. "(1,2,3)(4,5)".
    pub fn parse_cycles(degree: u32, text: &str) -> Result<Perm, Error> {
        let mut img: Vec<u32> = (0..degree).collect();
        let mut moved = vec![false; degree as usize];
        let body = text.trim();
        if body == "()" {
            return Ok(Perm { img });
        }
        let mut rest = body;
        while !rest.is_empty() {
            let rest2 = rest.trim_start();
            if rest2.is_empty() {
                break;
            }
            if !rest2.starts_with('(') {
                return Err(Error::BadPerm(format!("expected '(' in cycle string at {rest2:?}")));
            }
            let close = rest2
                .find(')')
                .ok_or_else(|| Error::BadPerm("unclosed cycle".into()))?;
            let cycle: Vec<u32> = rest2[1..close]
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::BadPerm(format!("bad point {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            if cycle.iter().any(|&p| p == 0 || p > degree) {
                return Err(Error::BadPerm(format!("cycle point out of range 1..={degree}")));
            }
            for w in 0..cycle.len() {
                let from = cycle[w] - 1;
                let to = cycle[(w + 1) % cycle.len()] - 1;
                if moved[from as usize] {
                    return Err(Error::BadPerm(format!("point {} repeated", from + 1)));
                }
                moved[from as usize] = true;
                img[from as usize] = to;
            }
            rest = &rest2[close + 1..];
        }
        Perm::from_images(img)
    }
}

/// Orbit of a point under a generator list, ascending.
pub fn orbit_of(gens: &[Perm], degree: u32, point: u32) -> Vec<u32> {
    let mut seen = vec![false; degree as usize];
    seen[point as usize] = true;
    let mut queue = vec![point];
    let mut head = 0;
    while head < queue.len() {
        let p = queue[head];
        head += 1;
        for g in gens {
            let q = g.apply(p);
            if !seen[q as usize] {
                seen[q as usize] = true;
                queue.push(q);
            }
        }
    }
    queue.sort_unstable();
    queue
}

/// All orbits, each ascending, ordered by smallest element.
pub fn orbits_of(gens: &[Perm], degree: u32) -> Vec<Vec<u32>> {
    let mut assigned = vec![false; degree as usize];
    let mut out = Vec::new();
    for p in 0..degree {
        if assigned[p as usize] {
            continue;
        }
        let orb = orbit_of(gens, degree, p);
        for &x in &orb {
            assigned[x as usize] = true;
        }
        out.push(orb);
    }
    out
}

fn image_of_set(g: &Perm, block: &[u32]) -> Vec<u32> {
    let mut img: Vec<u32> = block.iter().map(|&p| g.apply(p)).collect();
    img.sort_unstable();
    img
}

/// Orbit of a point set under a generator list.  Blocks are kept ascending
/// and the result is in lexicographic order.  `limit` caps the number of
/// blocks (an error reports overflow).
pub fn set_orbit(gens: &[Perm], block: &[u32], limit: usize) -> Result<Vec<Vec<u32>>, Error> {
    let mut start: Vec<u32> = block.to_vec();
    start.sort_unstable();
    start.dedup();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::new();
    queue.push_back(start);
    let mut out = Vec::new();
    while let Some(b) = queue.pop_front() {
        for g in gens {
            let img = image_of_set(g, &b);
            if !seen.contains(&img) {
                if seen.len() >= limit {
                    return Err(Error::ResourceGuard(format!("set orbit exceeds {limit} blocks")));
                }
                seen.insert(img.clone());
                queue.push_back(img);
            }
        }
        out.push(b);
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Clone)]
struct Level {
    point: u32,
    /// Strong generators active at this level (they fix all earlier base
    /// points).  Orbit and Schreier vector are computed from these.
    gens: Vec<Perm>,
    inv_gens: Vec<Perm>,
    /// BFS order, orbit[0] == point.
    orbit: Vec<u32>,
    /// schreier[p] = Some((gen index, parent)) for orbit points, None
    /// off-orbit; the root maps to Some((u32::MAX, root)).
    schreier: Vec<Option<(u32, u32)>>,
}

impl Level {
    fn new(degree: u32, point: u32) -> Level {
        Level {
            point,
            gens: Vec::new(),
            inv_gens: Vec::new(),
            orbit: Vec::new(),
            schreier: vec![None; degree as usize],
        }
    }

    fn recompute_orbit(&mut self, degree: u32) {
        self.schreier = vec![None; degree as usize];
        self.schreier[self.point as usize] = Some((u32::MAX, self.point));
        self.orbit.clear();
        self.orbit.push(self.point);
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for (k, g) in self.gens.iter().enumerate() {
                let q = g.apply(p);
                if self.schreier[q as usize].is_none() {
                    self.schreier[q as usize] = Some((k as u32, p));
                    self.orbit.push(q);
                }
            }
        }
    }

    fn in_orbit(&self, p: u32) -> bool {
        self.schreier[p as usize].is_some()
    }

    /// Coset representative u with point^u = p.
    fn rep(&self, p: u32, degree: u32) -> Perm {
        let mut path = Vec::new();
        let mut q = p;
        loop {
            let (k, parent) = self.schreier[q as usize].expect("rep of off-orbit point");
            if k == u32::MAX {
                break;
            }
            path.push(k);
            q = parent;
        }
        let mut u = Perm::identity(degree);
        for &k in path.iter().rev() {
            u.then_in_place(&self.gens[k as usize]);
        }
        u
    }

    /// Replaces x by x * rep(p)^-1 where p = point^x.
    fn divide_by_rep(&self, x: &mut Perm) {
        let mut p = x.apply(self.point);
        loop {
            let (k, parent) = self.schreier[p as usize].expect("divide_by_rep off orbit");
            if k == u32::MAX {
                return;
            }
            x.then_in_place(&self.inv_gens[k as usize]);
            p = parent;
            debug_assert_eq!(x.apply(self.point), p);
        }
    }
}

/// A permutation group with a base and strong generating set.
#[derive(Clone)]
pub struct Group {
    degree: u32,
    gens: Vec<Perm>,
    levels: Vec<Level>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Group(degree {}, order {}, base {:?})", self.degree, self.order(), self.base())
    }
}

impl Group {
    /// Deterministic Schreier-Sims over the generator list.
    pub fn from_gens(degree: u32, gens: Vec<Perm>) -> Result<Group, Error> {
        Group::build(degree, gens, None, &[])
    }

    /// As `from_gens`, but stops as soon as the chain order reaches
    /// `target`, and fails if the completed chain's order differs from it.
    pub fn with_order(degree: u32, gens: Vec<Perm>, target: u128) -> Result<Group, Error> {
        let g = Group::build(degree, gens, Some(target), &[])?;
        if g.order() != target {
            return Err(Error::Certificate(format!(
                "group order is {}, expected {}",
                g.order(),
                target
            )));
        }
        Ok(g)
    }

    /// As `with_order`, with the first base points forced to the given
    /// prefix (points fixed by the whole group are skipped).
    pub fn with_order_and_base(
        degree: u32,
        gens: Vec<Perm>,
        target: u128,
        base_prefix: &[u32],
    ) -> Result<Group, Error> {
        let g = Group::build(degree, gens, Some(target), base_prefix)?;
        if g.order() != target {
            return Err(Error::Certificate(format!(
                "group order is {}, expected {}",
                g.order(),
                target
            )));
        }
        Ok(g)
    }

    fn build(
        degree: u32,
        gens: Vec<Perm>,
        target: Option<u128>,
        base_prefix: &[u32],
    ) -> Result<Group, Error> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::BadPerm(format!(
                    "generator degree {} does not match group degree {degree}",
                    g.degree()
                )));
            }
        }
        let mut gens: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        // Drop duplicate generators, keeping first occurrences.
        let mut seen = HashSet::new();
        gens.retain(|g| seen.insert(g.clone()));

        let mut grp = Group { degree, gens: gens.clone(), levels: Vec::new() };
        for &p in base_prefix {
            if gens.iter().any(|g| g.apply(p) != p) {
                grp.levels.push(Level::new(degree, p));
            }
        }
        if grp.levels.is_empty() {
            let first_moved = gens.iter().filter_map(|g| g.smallest_moved_point()).min();
            match first_moved {
                Some(p) => grp.levels.push(Level::new(degree, p)),
                None => return Ok(grp), // trivial group
            }
        }
        for g in gens {
            grp.insert_gen(g, 0);
        }
        grp.schreier_sims(target);
        Ok(grp)
    }

    /// Adds g as a strong generator at every level from `from` down to the
    /// deepest base point it fixes, extending the base if g fixes them all.
    fn insert_gen(&mut self, g: Perm, from: usize) {
        let mut level = from;
        loop {
            if level == self.levels.len() {
                let p = (0..self.degree)
                    .find(|&p| g.apply(p) != p && !self.levels.iter().any(|l| l.point == p))
                    .expect("non-identity residue moves a point outside the base");
                self.levels.push(Level::new(self.degree, p));
            }
            let l = &mut self.levels[level];
            l.inv_gens.push(g.inverse());
            l.gens.push(g.clone());
            l.recompute_orbit(self.degree);
            if g.apply(l.point) != l.point {
                break;
            }
            level += 1;
        }
    }

    fn chain_order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Residue of x after dividing out coset representatives from `level`
    /// on; returns the residue and the level where sifting stopped.
    fn strip(&self, mut x: Perm, level: usize) -> (Perm, usize) {
        for i in level..self.levels.len() {
            let l = &self.levels[i];
            let p = x.apply(l.point);
            if !l.in_orbit(p) {
                return (x, i);
            }
            l.divide_by_rep(&mut x);
        }
        (x, self.levels.len())
    }

    fn schreier_sims(&mut self, target: Option<u128>) {
        // The partial chain's transversal products are distinct group
        // elements, so its order never exceeds the true order.  Passing the
        // target therefore already refutes it and the caller's final order
        // comparison will report the mismatch; stopping here just saves the
        // rest of the build.
        if let Some(t) = target {
            if self.chain_order() >= t {
                return;
            }
        }
        let mut i = self.levels.len().max(1) - 1;
        'outer: loop {
            // Examine all Schreier generators of level i.
            let orbit = self.levels[i].orbit.clone();
            for &p in &orbit {
                let u_p = self.levels[i].rep(p, self.degree);
                for k in 0..self.levels[i].gens.len() {
                    let mut s = u_p.then(&self.levels[i].gens[k]);
                    // s maps the base point to point^(u_p * gen).
                    let q = s.apply(self.levels[i].point);
                    debug_assert!(self.levels[i].in_orbit(q));
                    self.levels[i].divide_by_rep(&mut s);
                    if s.is_identity() {
                        continue;
                    }
                    let (residue, j) = self.strip(s, i + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    self.insert_gen(residue, i + 1);
                    if let Some(t) = target {
                        if self.chain_order() >= t {
                            return;
                        }
                    }
                    i = j.min(self.levels.len() - 1);
                    continue 'outer;
                }
            }
            // Every Schreier generator of level i sifted to the identity.
            if i == 0 {
                return;
            }
            i -= 1;
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn order(&self) -> u128 {
        self.chain_order()
    }

    pub fn contains(&self, x: &Perm) -> bool {
        if x.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.strip(x.clone(), 0);
        residue.is_identity()
    }

    pub fn orbit(&self, point: u32) -> Vec<u32> {
        orbit_of(&self.gens, self.degree, point)
    }

    pub fn orbits(&self) -> Vec<Vec<u32>> {
        orbits_of(&self.gens, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        !self.gens.is_empty() && self.orbit(0).len() as u32 == self.degree
    }

    pub fn is_two_transitive(&self) -> bool {
        if self.degree < 2 || !self.is_transitive() {
            return false;
        }
        // Orbit of an ordered pair.
        let n = self.degree as usize;
        let start = (0u32, 1u32);
        let mut seen = vec![false; n * n];
        seen[1] = true;
        let mut queue = vec![start];
        let mut head = 0;
        while head < queue.len() {
            let (a, b) = queue[head];
            head += 1;
            for g in &self.gens {
                let (x, y) = (g.apply(a), g.apply(b));
                let idx = x as usize * n + y as usize;
                if !seen[idx] {
                    seen[idx] = true;
                    queue.push((x, y));
                }
            }
        }
        queue.len() == n * (n - 1)
    }

    /// A word in the generators mapping the ordered pair `from` to `to`,
    /// if one exists.
    pub fn element_mapping_pair(&self, from: (u32, u32), to: (u32, u32)) -> Option<Perm> {
        let n = self.degree as usize;
        let idx = |p: (u32, u32)| p.0 as usize * n + p.1 as usize;
        let mut parent: HashMap<usize, (usize, u32)> = HashMap::new();
        parent.insert(idx(from), (usize::MAX, 0));
        let mut queue = VecDeque::new();
        queue.push_back(from);
        while let Some((a, b)) = queue.pop_front() {
            if (a, b) == to {
                // Reconstruct the word.
                let mut word = Vec::new();
                let mut cur = idx(to);
                while cur != idx(from) {
                    let (prev, k) = parent[&cur];
                    word.push(k);
                    cur = prev;
                }
                let mut g = Perm::identity(self.degree);
                for &k in word.iter().rev() {
                    g.then_in_place(&self.gens[k as usize]);
                }
                return Some(g);
            }
            for (k, g) in self.gens.iter().enumerate() {
                let next = (g.apply(a), g.apply(b));
                if let Entry::Vacant(e) = parent.entry(idx(next)) {
                    e.insert((idx((a, b)), k as u32));
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// Uniformly random element: the product of one uniformly chosen coset
    /// representative per level.
    pub fn random_element(&self, rng: &mut impl rand::Rng) -> Perm {
        let mut x = Perm::identity(self.degree);
        for l in self.levels.iter().rev() {
            let p = l.orbit[rng.gen_range(0..l.orbit.len())];
            x.then_in_place(&l.rep(p, self.degree));
        }
        x
    }

    /// Every element, by nested transversal enumeration (deepest level
    /// varying fastest).  Guarded against groups above the given size.
    pub fn elements(&self, limit: usize) -> Result<Vec<Perm>, Error> {
        let order = self.order();
        if order > limit as u128 {
            return Err(Error::ResourceGuard(format!(
                "group of order {order} exceeds the element enumeration limit {limit}"
            )));
        }
        let mut out = vec![Perm::identity(self.degree)];
        for l in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * l.orbit.len());
            for &p in &l.orbit {
                let u = l.rep(p, self.degree);
                for x in &out {
                    next.push(x.then(&u));
                }
            }
            out = next;
        }
        debug_assert_eq!(out.len() as u128, order);
        Ok(out)
    }

    /// Stabilizer of a point, as a group with a certified order.
    pub fn point_stabilizer(&self, point: u32) -> Result<Group, Error> {
        let orbit = self.orbit(point);
        let target = self.order() / orbit.len() as u128;
        if orbit.len() == 1 {
            return Ok(self.clone());
        }
        // Transversal for the orbit of `point` under the full group.  Each
        // Schreier generator is sifted into a growing chain; ones already in
        // the chain's group are dropped, and each kept one at least doubles
        // the chain order, so the chain grows at most log2(target) times.
        // Schreier's lemma guarantees the full generator set closes the
        // stabilizer, so the scan stops at the target order at the latest
        // when the queue drains, and usually much earlier.
        let mut reps: HashMap<u32, Perm> = HashMap::new();
        reps.insert(point, Perm::identity(self.degree));
        let mut queue = VecDeque::new();
        queue.push_back(point);
        let mut stab = Group { degree: self.degree, gens: Vec::new(), levels: Vec::new() };
        'bfs: while let Some(p) = queue.pop_front() {
            let u_p = reps[&p].clone();
            for g in &self.gens {
                let q = g.apply(p);
                if !reps.contains_key(&q) {
                    reps.insert(q, u_p.then(g));
                    queue.push_back(q);
                }
                let s = u_p.then(g).then(&reps[&q].inverse());
                stab.extend_with(s, target);
                if stab.chain_order() == target {
                    break 'bfs;
                }
            }
        }
        if stab.order() != target {
            return Err(Error::Certificate(format!(
                "point stabilizer closed at order {}, expected {target}",
                stab.order()
            )));
        }
        Ok(stab)
    }

    /// Adds one element to the chain unless it is already in the group,
    /// then restores closure, stopping early at the target order.  Only
    /// sound while the chain order is below the target: the membership
    /// test needs a fully closed chain, which an early stop skips.
    fn extend_with(&mut self, g: Perm, target: u128) {
        if self.chain_order() >= target || g.is_identity() || self.contains(&g) {
            return;
        }
        self.gens.push(g.clone());
        self.insert_gen(g, 0);
        self.schreier_sims(Some(target));
    }

    /// Finest nontrivial block system containing {seed, other}, as the
    /// partition class vector, by the union-find method.
    fn minimal_block_system(&self, seed: u32, other: u32) -> Vec<u32> {
        let n = self.degree as usize;
        let mut parent: Vec<u32> = (0..self.degree).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                let up = parent[parent[x as usize] as usize];
                parent[x as usize] = up;
                x = up;
            }
            x
        }
        let mut queue = VecDeque::new();
        parent[other as usize] = seed;
        queue.push_back((seed, other));
        while let Some((a, b)) = queue.pop_front() {
            for g in &self.gens {
                let (x, y) = (g.apply(a), g.apply(b));
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    // Merge the smaller-rooted class into the other.
                    let (keep, merge) = if rx < ry { (rx, ry) } else { (ry, rx) };
                    parent[merge as usize] = keep;
                    queue.push_back((keep, merge));
                }
            }
        }
        (0..n as u32).map(|x| find(&mut parent, x)).collect()
    }

    /// True when the group is transitive and preserves no nontrivial
    /// partition.
    pub fn is_primitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        if self.degree <= 2 {
            return true;
        }
        for other in 1..self.degree {
            let classes = self.minimal_block_system(0, other);
            let size = classes.iter().filter(|&&c| c == classes[0]).count() as u32;
            if size != self.degree {
                return false;
            }
        }
        true
    }
}

/// The permutation action of `g` on the conjugacy class of `sub`, with the
/// class listed in a canonical order (conjugates sorted by their sorted
/// element lists).  Returns the action and the element lists, so callers
/// can relate action points back to subgroups.
pub fn conjugation_action(g: &Group, sub: &Group) -> Result<(Group, Vec<Vec<Perm>>), Error> {
    if sub.degree() != g.degree() {
        return Err(Error::BadPerm("subgroup degree mismatch".into()));
    }
    let elems = sub.elements(100_000)?;
    for e in &elems {
        if !g.contains(e) {
            return Err(Error::BadPerm("conjugation action of a non-subgroup".into()));
        }
    }
    let canonical = |mut list: Vec<Perm>| -> Vec<Perm> {
        list.sort_unstable();
        list
    };
    let start = canonical(elems);
    let mut class: Vec<Vec<Perm>> = vec![start.clone()];
    let mut index: HashMap<Vec<Perm>, usize> = HashMap::new();
    index.insert(start, 0);
    let mut head = 0;
    while head < class.len() {
        let cur = class[head].clone();
        head += 1;
        for gen in g.gens() {
            let img = canonical(cur.iter().map(|e| e.conjugate_by(gen)).collect());
            if !index.contains_key(&img) {
                index.insert(img.clone(), class.len());
                class.push(img);
            }
        }
    }
    // Canonical point order: sort the class, remember where each conjugate
    // went.
    let mut order: Vec<usize> = (0..class.len()).collect();
    order.sort_by(|&a, &b| class[a].cmp(&class[b]));
    let mut rank = vec![0usize; class.len()];
    for (new_pos, &old_pos) in order.iter().enumerate() {
        rank[old_pos] = new_pos;
    }
    let sorted_class: Vec<Vec<Perm>> = order.iter().map(|&i| class[i].clone()).collect();
    let action_gens: Vec<Perm> = g
        .gens()
        .iter()
        .map(|gen| {
            let mut img = vec![0u32; class.len()];
            for (old_pos, members) in class.iter().enumerate() {
                let img_sub = canonical(members.iter().map(|e| e.conjugate_by(gen)).collect());
                img[rank[old_pos] as usize] = rank[index[&img_sub]] as u32;
            }
            Perm::from_images(img).expect("conjugation images are bijections")
        })
        .collect();
    let action = Group::from_gens(class.len() as u32, action_gens)?;
    Ok((action, sorted_class))
}

/// Checks that every generator permutes the block list, then that the
/// orbit of one flag covers every flag.  A generator moving a block off the
/// list is an error, not `false`.
pub fn is_flag_transitive(
    gens: &[Perm],
    blocks: &[Vec<u32>],
) -> Result<bool, Error> {
    if blocks.is_empty() {
        return Err(Error::DesignInvalid("no blocks".into()));
    }
    let mut index: HashMap<&[u32], u32> = HashMap::new();
    for (i, b) in blocks.iter().enumerate() {
        if index.insert(b.as_slice(), i as u32).is_some() {
            return Err(Error::DesignInvalid("repeated block".into()));
        }
    }
    let mut block_maps: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
    for g in gens {
        let mut map = Vec::with_capacity(blocks.len());
        for b in blocks {
            let img = image_of_set(g, b);
            match index.get(img.as_slice()) {
                Some(&j) => map.push(j),
                None => {
                    return Err(Error::DesignInvalid(format!(
                        "a generator maps block {b:?} outside the design"
                    )))
                }
            }
        }
        block_maps.push(map);
    }
    let total_flags: usize = blocks.iter().map(|b| b.len()).sum();
    let start = (blocks[0][0], 0u32);
    let mut seen: HashSet<(u32, u32)> = HashSet::with_capacity(total_flags);
    seen.insert(start);
    let mut queue = VecDeque::new();
    queue.push_back(start);
    while let Some((p, bi)) = queue.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            let next = (g.apply(p), block_maps[gi][bi as usize]);
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen.len() == total_flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn s4() -> Group {
        let a = Perm::parse_cycles(4, "(1,2)").unwrap();
        let b = Perm::parse_cycles(4, "(1,2,3,4)").unwrap();
        Group::from_gens(4, vec![a, b]).unwrap()
    }

    #[test]
    fn compose_and_inverse() {
        let a = Perm::parse_cycles(5, "(1,2,3)").unwrap();
        let b = Perm::parse_cycles(5, "(3,4)").unwrap();
        let ab = a.then(&b);
        // 1 -> 2 under a, 2 -> 2 under b.
        assert_eq!(ab.apply(0), 1);
        // 3 -> 1 under a, 1 -> 1 under b.
        assert_eq!(ab.apply(2), 0);
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.order(), 3);
        assert_eq!(ab.order(), 4); // (1,2,3)(3,4) = (1,2,4,3) has order 4
    }

    #[test]
    fn cycle_notation_roundtrip() {
        let texts = ["(1,2,3)(4,5)", "()", "(2,7)(3,5,6)"];
        for t in texts {
            let p = Perm::parse_cycles(7, t).unwrap();
            let back = Perm::parse_cycles(7, &p.cycle_string()).unwrap();
            assert_eq!(p, back);
        }
        assert!(Perm::parse_cycles(3, "(1,4)").is_err());
        assert!(Perm::parse_cycles(3, "(1,1)").is_err());
        assert!(Perm::parse_cycles(3, "(1,2").is_err());
    }

    #[test]
    fn symmetric_group_chain() {
        let g = s4();
        assert_eq!(g.order(), 24);
        assert_eq!(g.base()[0], 0);
        assert!(g.contains(&Perm::parse_cycles(4, "(1,3)(2,4)").unwrap()));
        assert!(g.contains(&Perm::parse_cycles(4, "(3,4)").unwrap()));
        let odd_missing = Group::from_gens(
            4,
            vec![Perm::parse_cycles(4, "(1,2,3)").unwrap(), Perm::parse_cycles(4, "(2,3,4)").unwrap()],
        )
        .unwrap();
        assert_eq!(odd_missing.order(), 12); // alternating group
        assert!(!odd_missing.contains(&Perm::parse_cycles(4, "(1,2)").unwrap()));
    }

    #[test]
    fn with_order_matches_full_run() {
        let a = Perm::parse_cycles(8, "(1,2,3,4,5,6,7)").unwrap();
        let b = Perm::parse_cycles(8, "(6,7,8)").unwrap();
        let full = Group::from_gens(8, vec![a.clone(), b.clone()]).unwrap();
        let fast = Group::with_order(8, vec![a, b], full.order()).unwrap();
        assert_eq!(full.order(), fast.order());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x = full.random_element(&mut rng);
            assert!(fast.contains(&x));
        }
        assert!(Group::with_order(4, vec![Perm::parse_cycles(4, "(1,2)").unwrap()], 3).is_err());
    }

    #[test]
    fn orbit_stabilizer_counts() {
        let g = s4();
        for p in 0..4 {
            let stab = g.point_stabilizer(p).unwrap();
            assert_eq!(g.orbit(p).len() as u128 * stab.order(), g.order());
            assert!(stab.gens().iter().all(|x| x.apply(p) == p));
        }
    }

    #[test]
    fn elements_enumeration() {
        let g = s4();
        let elems = g.elements(1000).unwrap();
        assert_eq!(elems.len(), 24);
        let distinct: HashSet<_> = elems.iter().collect();
        assert_eq!(distinct.len(), 24);
        assert!(g.elements(10).is_err());
    }

    #[test]
    fn set_orbits() {
        let g = s4();
        let orb = set_orbit(g.gens(), &[0, 1], 100).unwrap();
        assert_eq!(orb.len(), 6);
        assert!(orb.windows(2).all(|w| w[0] < w[1]));
        assert!(set_orbit(g.gens(), &[0, 1], 3).is_err());
    }

    #[test]
    fn primitivity() {
        let c4 = Group::from_gens(4, vec![Perm::parse_cycles(4, "(1,2,3,4)").unwrap()]).unwrap();
        assert!(!c4.is_primitive());
        assert!(s4().is_primitive());
        let s3_intransitive =
            Group::from_gens(5, vec![Perm::parse_cycles(5, "(1,2,3)").unwrap(), Perm::parse_cycles(5, "(1,2)").unwrap()])
                .unwrap();
        assert!(!s3_intransitive.is_primitive());
    }

    #[test]
    fn two_transitivity() {
        assert!(s4().is_two_transitive());
        let c4 = Group::from_gens(4, vec![Perm::parse_cycles(4, "(1,2,3,4)").unwrap()]).unwrap();
        assert!(!c4.is_two_transitive());
    }

    #[test]
    fn pair_mapping_element() {
        let g = s4();
        let x = g.element_mapping_pair((0, 1), (1, 0)).unwrap();
        assert_eq!(x.apply(0), 1);
        assert_eq!(x.apply(1), 0);
        assert!(g.contains(&x));
        let c4 = Group::from_gens(4, vec![Perm::parse_cycles(4, "(1,2,3,4)").unwrap()]).unwrap();
        assert!(c4.element_mapping_pair((0, 1), (1, 0)).is_none());
    }

    #[test]
    fn conjugation_action_on_transpositions() {
        let s3 = Group::from_gens(
            3,
            vec![Perm::parse_cycles(3, "(1,2)").unwrap(), Perm::parse_cycles(3, "(1,2,3)").unwrap()],
        )
        .unwrap();
        let sub = Group::from_gens(3, vec![Perm::parse_cycles(3, "(1,2)").unwrap()]).unwrap();
        let (action, class) = conjugation_action(&s3, &sub).unwrap();
        assert_eq!(class.len(), 3);
        assert_eq!(action.degree(), 3);
        assert_eq!(action.order(), 6);
        assert!(action.is_transitive());
    }

    #[test]
    fn flag_transitivity_on_a_triangle() {
        let s3 = vec![Perm::parse_cycles(3, "(1,2)").unwrap(), Perm::parse_cycles(3, "(1,2,3)").unwrap()];
        let blocks = vec![vec![0, 1], vec![0, 2], vec![1, 2]];
        assert!(is_flag_transitive(&s3, &blocks).unwrap());
        // A group of order 3 cannot move one flag onto all six.
        let c3 = vec![Perm::parse_cycles(3, "(1,2,3)").unwrap()];
        assert!(!is_flag_transitive(&c3, &blocks).unwrap());
        let bad_blocks = vec![vec![0, 1], vec![0, 2]];
        assert!(is_flag_transitive(&s3, &bad_blocks).is_err());
    }

    #[test]
    fn deterministic_chain() {
        let mk = || {
            let a = Perm::parse_cycles(11, "(1,2,3,4,5,6,7,8,9,10,11)").unwrap();
            let b = Perm::parse_cycles(11, "(3,7,11,8)(4,10,5,6)").unwrap();
            Group::from_gens(11, vec![a, b]).unwrap()
        };
        let g1 = mk();
        let g2 = mk();
        assert_eq!(g1.order(), 7920);
        assert_eq!(g1.base(), g2.base());
        assert_eq!(
            g1.levels.iter().map(|l| l.orbit.clone()).collect::<Vec<_>>(),
            g2.levels.iter().map(|l| l.orbit.clone()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn random_elements_are_members() {
        let g = s4();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert!(g.contains(&g.random_element(&mut rng)));
        }
    }
}
