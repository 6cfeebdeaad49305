//! Projective geometry over finite fields and the block-design type.
//!
//! Throughout, `n` is the dimension of the underlying vector space, so
//! `pg_points(3, 2)` lists the seven points of the Fano plane PG(2,2).
//! Projective points are normalized homogeneous coordinate tuples whose
//! first nonzero coordinate is 1, listed in lexicographic order of their
//! element indices.  All designs produced here (and everywhere else in the
//! crate) store their blocks in one flat buffer, each block ascending and
//! the block list in lexicographic order, so equal designs have equal
//! representations.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::ff::{Fe, FiniteField};
use crate::perm::Perm;

/// Gaussian binomial coefficient: the number of k-dimensional subspaces
/// of an n-dimensional space over a field with q elements.
pub fn gauss_binom(n: u32, k: u32, q: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut result = BigUint::one();
    for i in 0..k {
        let num = q.pow(n - i) - 1u32;
        let den = q.pow(i + 1) - 1u32;
        result *= num;
        debug_assert!((&result % &den).is_zero());
        result /= den;
    }
    result
}

/// A block design on points 0..v.  Blocks are stored back to back in one
/// buffer; `starts` has one extra entry marking the end.  The `meta`
/// string records construction provenance and is ignored by equality.
#[derive(Clone)]
pub struct Design {
    v: u32,
    starts: Vec<u32>,
    data: Vec<u32>,
    meta: String,
}

impl PartialEq for Design {
    fn eq(&self, other: &Design) -> bool {
        self.v == other.v && self.starts == other.starts && self.data == other.data
    }
}
impl Eq for Design {}

impl std::fmt::Debug for Design {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Design(v {}, b {}, {:?})", self.v, self.b(), self.meta)
    }
}

impl Design {
    /// Builds a design from a block list, sorting each block and the block
    /// list into canonical order.  Blocks must be nonempty sets of points
    /// below v.
    pub fn new(v: u32, blocks: Vec<Vec<u32>>) -> Result<Design, Error> {
        let mut blocks = blocks;
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(Error::DesignInvalid("empty block".into()));
            }
            b.sort_unstable();
            if b.iter().any(|&p| p >= v) {
                return Err(Error::DesignInvalid(format!("point out of range 0..{v}")));
            }
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DesignInvalid("repeated point in a block".into()));
            }
        }
        blocks.sort_unstable();
        let mut starts = Vec::with_capacity(blocks.len() + 1);
        let mut data = Vec::with_capacity(blocks.iter().map(Vec::len).sum());
        starts.push(0);
        for b in &blocks {
            data.extend_from_slice(b);
            starts.push(data.len() as u32);
        }
        Ok(Design { v, starts, data, meta: String::new() })
    }

    /// Builds a design directly from sorted flat storage, validating the
    /// same invariants `new` establishes.
    pub fn from_flat(v: u32, starts: Vec<u32>, data: Vec<u32>) -> Result<Design, Error> {
        if starts.first() != Some(&0) || *starts.last().unwrap_or(&u32::MAX) as usize != data.len()
        {
            return Err(Error::DesignInvalid("start offsets do not frame the data".into()));
        }
        if data.iter().any(|&p| p >= v) {
            return Err(Error::DesignInvalid(format!("point out of range 0..{v}")));
        }
        let d = Design { v, starts, data, meta: String::new() };
        for i in 0..d.b() {
            let b = d.block(i);
            if b.is_empty() || b.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::DesignInvalid("blocks must be nonempty and ascending".into()));
            }
            if i + 1 < d.b() && d.block(i) > d.block(i + 1) {
                return Err(Error::DesignInvalid("block list is not sorted".into()));
            }
        }
        Ok(d)
    }

    pub fn with_meta(mut self, meta: impl Into<String>) -> Design {
        self.meta = meta.into();
        self
    }

    pub fn meta(&self) -> &str {
        &self.meta
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn b(&self) -> usize {
        self.starts.len() - 1
    }

    pub fn block(&self, i: usize) -> &[u32] {
        &self.data[self.starts[i] as usize..self.starts[i + 1] as usize]
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.b()).map(move |i| self.block(i))
    }

    /// The common block size, if there is one.
    pub fn uniform_k(&self) -> Option<u32> {
        let mut it = self.blocks();
        let k = it.next()?.len();
        it.all(|b| b.len() == k).then_some(k as u32)
    }

    pub fn contains_block(&self, block: &[u32]) -> bool {
        // Blocks are sorted, so binary search works on the whole list.
        (0..self.b())
            .collect::<Vec<_>>()
            .binary_search_by(|&i| self.block(i).cmp(block))
            .is_ok()
    }
}

/// Whether every generator permutes the design's blocks and a single
/// point-block flag reaches all of them.  A generator that maps a block
/// off the design is an error rather than `false`.
pub fn design_flag_transitive(d: &Design, gens: &[Perm]) -> Result<bool, Error> {
    if d.b() == 0 {
        return Err(Error::DesignInvalid("no blocks".into()));
    }
    for g in gens {
        if g.degree() != d.v() {
            return Err(Error::BadPerm("generator degree does not match the point count".into()));
        }
    }
    let mut index: HashMap<&[u32], u32> = HashMap::with_capacity(d.b());
    for i in 0..d.b() {
        if index.insert(d.block(i), i as u32).is_some() {
            return Err(Error::DesignInvalid("repeated block".into()));
        }
    }
    let mut block_maps: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
    let mut scratch = Vec::new();
    for g in gens {
        let mut map = Vec::with_capacity(d.b());
        for i in 0..d.b() {
            scratch.clear();
            scratch.extend(d.block(i).iter().map(|&p| g.apply(p)));
            scratch.sort_unstable();
            match index.get(scratch.as_slice()) {
                Some(&j) => map.push(j),
                None => {
                    return Err(Error::DesignInvalid(format!(
                        "a generator maps block {i} outside the design"
                    )))
                }
            }
        }
        block_maps.push(map);
    }
    // Flag BFS over (point, block) pairs, tracked in a bitset indexed by
    // the point's offset in the block data.
    let total_flags = d.data.len();
    let mut seen = vec![false; total_flags];
    seen[d.starts[0] as usize] = true;
    let mut stack: Vec<(u32, u32)> = vec![(d.block(0)[0], 0)];
    let mut reached = 1usize;
    while let Some((p, bi)) = stack.pop() {
        for (gi, g) in gens.iter().enumerate() {
            let q = g.apply(p);
            let bj = block_maps[gi][bi as usize];
            let block = d.block(bj as usize);
            let pos = block.binary_search(&q).expect("image point lies in the image block");
            let idx = d.starts[bj as usize] as usize + pos;
            if !seen[idx] {
                seen[idx] = true;
                reached += 1;
                stack.push((q, bj));
            }
        }
    }
    Ok(reached == total_flags)
}

/// A projective space PG(n-1, q) built over an n-dimensional vector
/// space, with a point index for coordinate lookups.
pub struct ProjSpace<'a> {
    pub field: &'a FiniteField,
    /// Vector-space dimension; coordinate tuples have this length.
    pub n: u32,
    pub points: Vec<Vec<Fe>>,
    index: HashMap<Vec<Fe>, u32>,
}

impl<'a> ProjSpace<'a> {
    pub fn new(field: &'a FiniteField, n: u32) -> Result<ProjSpace<'a>, Error> {
        if n < 2 {
            return Err(Error::BadGeometry("projective spaces need dimension at least 2".into()));
        }
        let q = field.q() as u64;
        let total = q.checked_pow(n).filter(|&t| t <= 1 << 24).ok_or_else(|| {
            Error::ResourceGuard(format!("{q}^{n} coordinate tuples is too many to enumerate"))
        })?;
        let mut points = Vec::new();
        let mut tuple = vec![Fe::ZERO; n as usize];
        for code in 1..total {
            let mut c = code;
            for slot in tuple.iter_mut().rev() {
                *slot = Fe((c % q) as u32);
                c /= q;
            }
            let first = tuple.iter().position(|&x| x != Fe::ZERO).unwrap();
            if tuple[first] == Fe::ONE {
                points.push(tuple.clone());
            }
        }
        debug_assert_eq!(points.len() as u64, (total - 1) / (q - 1));
        let index = points.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        Ok(ProjSpace { field, n, points, index })
    }

    /// Scales the tuple so its first nonzero coordinate is 1.
    pub fn normalize(&self, coords: &[Fe]) -> Result<Vec<Fe>, Error> {
        let first = coords
            .iter()
            .position(|&x| x != Fe::ZERO)
            .ok_or_else(|| Error::BadGeometry("the zero tuple is not a projective point".into()))?;
        let inv = self.field.inv(coords[first])?;
        Ok(coords.iter().map(|&x| self.field.mul(inv, x)).collect())
    }

    pub fn index_of(&self, coords: &[Fe]) -> Result<u32, Error> {
        let norm = self.normalize(coords)?;
        self.index
            .get(&norm)
            .copied()
            .ok_or_else(|| Error::BadGeometry("coordinate tuple has the wrong length".into()))
    }

    pub fn dot(&self, a: &[Fe], b: &[Fe]) -> Fe {
        let mut acc = Fe::ZERO;
        for (&x, &y) in a.iter().zip(b) {
            acc = self.field.add(acc, self.field.mul(x, y));
        }
        acc
    }

    /// The permutation of point indices induced by an invertible linear
    /// map, given row by row (the image of point x is x * m).
    pub fn linear_action(&self, m: &[Vec<Fe>]) -> Result<Perm, Error> {
        let mut img = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let mut out = vec![Fe::ZERO; self.n as usize];
            for (i, &xi) in p.iter().enumerate() {
                for (j, &mij) in m[i].iter().enumerate() {
                    out[j] = self.field.add(out[j], self.field.mul(xi, mij));
                }
            }
            img.push(self.index_of(&out)?);
        }
        Perm::from_images(img)
    }

    /// The permutation induced by applying a field automorphism (the j-th
    /// power of Frobenius) to every coordinate.
    pub fn frobenius_action(&self, j: u32) -> Result<Perm, Error> {
        let mut img = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let out: Vec<Fe> = p.iter().map(|&x| self.field.frobenius(x, j)).collect();
            img.push(self.index_of(&out)?);
        }
        Perm::from_images(img)
    }
}

fn field_for(q: u32) -> Result<FiniteField, Error> {
    let (p, a) = crate::ff::prime_power(q)
        .ok_or_else(|| Error::BadField(format!("{q} is not a prime power")))?;
    FiniteField::new(p, a)
}

/// The points of PG(n-1, q): all normalized n-tuples over GF(q), in
/// lexicographic order of element indices.
pub fn pg_points(n: u32, q: u32) -> Result<Vec<Vec<Fe>>, Error> {
    let f = field_for(q)?;
    Ok(ProjSpace::new(&f, n)?.points)
}

/// The point-hyperplane design of PG(n-1, q): a symmetric 2-design with
/// v = (q^n - 1)/(q - 1), k = (q^(n-1) - 1)/(q - 1), and
/// lambda = (q^(n-2) - 1)/(q - 1).  Needs n >= 3.
pub fn pg_design(n: u32, q: u32) -> Result<Design, Error> {
    if n < 3 {
        return Err(Error::BadGeometry("hyperplane designs need dimension at least 3".into()));
    }
    let f = field_for(q)?;
    let space = ProjSpace::new(&f, n)?;
    // Hyperplanes are indexed by normalized covectors, which run over the
    // same tuples as the points.
    let mut blocks = Vec::with_capacity(space.points.len());
    for h in &space.points {
        let mut block = Vec::new();
        for (i, p) in space.points.iter().enumerate() {
            if space.dot(h, p) == Fe::ZERO {
                block.push(i as u32);
            }
        }
        blocks.push(block);
    }
    let d = Design::new(space.points.len() as u32, blocks)?;
    Ok(d.with_meta(format!("points vs hyperplanes of PG({}, {q})", n - 1)))
}

/// All lines of the projective space, each as an ascending list of point
/// indices.
pub fn pg_lines(space: &ProjSpace) -> Result<Vec<Vec<u32>>, Error> {
    let f = space.field;
    let npts = space.points.len();
    let mut lines: Vec<Vec<u32>> = Vec::new();
    for a in 0..npts {
        for b in a + 1..npts {
            // The line through a and b consists of a, and b + t*a for all t.
            let mut pts = vec![a as u32];
            for t in f.elems() {
                let coords: Vec<Fe> = space.points[b]
                    .iter()
                    .zip(&space.points[a])
                    .map(|(&xb, &xa)| f.add(xb, f.mul(t, xa)))
                    .collect();
                pts.push(space.index_of(&coords)?);
            }
            pts.sort_unstable();
            pts.dedup();
            // Each line arises from every one of its point pairs; keep it
            // only when (a, b) is the lexicographically first pair.
            if pts[0] as usize == a && pts[1] as usize == b {
                lines.push(pts);
            }
        }
    }
    lines.sort_unstable();
    Ok(lines)
}

/// The punctured-line design on the points of PG(n-1, q): one block per
/// (line, point) pair, namely the line with that point removed.  A
/// 2-((q^n - 1)/(q - 1), q, q - 1) design with r = (q^n - q)/(q - 1);
/// the family condition gcd(n-1, q-1) = 1 makes gcd(r, lambda) = 1.
pub fn pg_line_design(n: u32, q: u32) -> Result<Design, Error> {
    if n < 3 {
        return Err(Error::BadGeometry("punctured-line designs need dimension at least 3".into()));
    }
    if q == 2 {
        return Err(Error::BadGeometry("q = 2 gives two-point blocks, a trivial design".into()));
    }
    if num_integer::gcd(n - 1, q - 1) != 1 {
        return Err(Error::BadGeometry(format!(
            "gcd(n-1, q-1) = gcd({}, {}) must be 1 for this family",
            n - 1,
            q - 1
        )));
    }
    let f = field_for(q)?;
    let space = ProjSpace::new(&f, n)?;
    let lines = pg_lines(&space)?;
    let mut blocks = Vec::with_capacity(lines.len() * (q as usize + 1));
    for line in &lines {
        for skip in 0..line.len() {
            let mut block = line.clone();
            block.remove(skip);
            blocks.push(block);
        }
    }
    let d = Design::new(space.points.len() as u32, blocks)?;
    Ok(d.with_meta(format!("punctured lines of PG({}, {q})", n - 1)))
}

/// The field GF(q^2) together with the isotropic points of the standard
/// Hermitian form x0^(q+1) + x1^(q+1) + x2^(q+1) on PG(2, q^2), as
/// normalized coordinate tuples in point-index order.  This fixed listing
/// is the shared point labeling for `hermitian_unital` and for the unitary
/// groups acting on it.
pub fn hermitian_isotropic_points(q: u32) -> Result<(FiniteField, Vec<Vec<Fe>>), Error> {
    if q < 3 {
        return Err(Error::BadGeometry("unitals need q at least 3".into()));
    }
    let (p, a) = crate::ff::prime_power(q)
        .ok_or_else(|| Error::BadField(format!("{q} is not a prime power")))?;
    let big = FiniteField::new(p, 2 * a)?;
    let iso = {
        let space = ProjSpace::new(&big, 3)?;
        // Conjugation is the q-th power map, so the Hermitian norm of x is
        // x * x^q = x^(q+1).
        let herm = |pt: &[Fe]| {
            let mut acc = Fe::ZERO;
            for &x in pt {
                acc = big.add(acc, big.pow(x, (q + 1) as u64));
            }
            acc
        };
        space.points.iter().filter(|pt| herm(pt) == Fe::ZERO).cloned().collect::<Vec<_>>()
    };
    if iso.len() as u64 != (q as u64).pow(3) + 1 {
        return Err(Error::BadGeometry(format!(
            "isotropic point count {} is off for order {q}",
            iso.len()
        )));
    }
    Ok((big, iso))
}

/// The Hermitian unital of order q: the q^3 + 1 isotropic points of a
/// nondegenerate Hermitian form on PG(2, q^2), with the secant-line
/// sections as blocks.  A 2-(q^3 + 1, q + 1, 1) design.
pub fn hermitian_unital(q: u32) -> Result<Design, Error> {
    let (big, iso) = hermitian_isotropic_points(q)?;
    let space = ProjSpace::new(&big, 3)?;
    // Re-label unital points by their rank so the design lives on 0..v.
    let rank: HashMap<u32, u32> = iso
        .iter()
        .enumerate()
        .map(|(r, pt)| (space.index_of(pt).unwrap(), r as u32))
        .collect();
    let unital: Vec<u32> = {
        let mut v: Vec<u32> = rank.keys().copied().collect();
        v.sort_unstable();
        v
    };
    let mut blocks = Vec::new();
    for h in &space.points {
        let section: Vec<u32> = unital
            .iter()
            .filter(|&&i| space.dot(h, &space.points[i as usize]) == Fe::ZERO)
            .map(|&i| rank[&i])
            .collect();
        // Lines meet the unital in 1 or q+1 points; the secants are blocks.
        match section.len() as u32 {
            1 => {}
            s if s == q + 1 => blocks.push(section),
            s => {
                return Err(Error::BadGeometry(format!(
                    "a line meets the isotropic points {s} times; the form must be degenerate"
                )))
            }
        }
    }
    let d = Design::new(unital.len() as u32, blocks)?;
    Ok(d.with_meta(format!("Hermitian unital of order {q}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    /// Counts k-dimensional subspaces of GF(p)^n directly: ordered
    /// independent k-tuples divided by the count of bases of one subspace.
    fn count_subspaces(n: u32, k: u32, p: u64) -> u64 {
        let total = p.pow(n);
        let to_coords = |v: u64| -> Vec<u64> {
            let mut c = v;
            (0..n)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    d
                })
                .collect()
        };
        let rank = |rows: &[Vec<u64>]| -> usize {
            let mut m: Vec<Vec<u64>> = rows.to_vec();
            let mut r = 0;
            for col in 0..n as usize {
                if let Some(pivot) = (r..m.len()).find(|&i| m[i][col] != 0) {
                    m.swap(r, pivot);
                    let inv = (1..p).find(|&x| x * m[r][col] % p == 1).unwrap();
                    for i in 0..m.len() {
                        if i != r && m[i][col] != 0 {
                            let factor = m[i][col] * inv % p;
                            for c in 0..n as usize {
                                m[i][c] = (m[i][c] + (p - factor) * m[r][c]) % p;
                            }
                        }
                    }
                    r += 1;
                }
            }
            r
        };
        let mut tuples: Vec<Vec<u64>> = vec![vec![]];
        for _ in 0..k {
            let mut next = Vec::new();
            for t in &tuples {
                for v in 1..total {
                    let mut rows: Vec<Vec<u64>> = t.iter().map(|&x| to_coords(x)).collect();
                    rows.push(to_coords(v));
                    if rank(&rows) == rows.len() {
                        let mut t2 = t.clone();
                        t2.push(v);
                        next.push(t2);
                    }
                }
            }
            tuples = next;
        }
        let bases_per_subspace: u64 = (0..k).map(|i| p.pow(k) - p.pow(i)).product();
        tuples.len() as u64 / bases_per_subspace
    }

    #[test]
    fn gaussian_binomials_count_subspaces() {
        assert_eq!(gauss_binom(4, 2, 2), big(count_subspaces(4, 2, 2)));
        assert_eq!(gauss_binom(4, 2, 3), big(count_subspaces(4, 2, 3)));
        assert_eq!(gauss_binom(3, 1, 5), big(count_subspaces(3, 1, 5)));
        assert_eq!(gauss_binom(4, 3, 2), big(count_subspaces(4, 3, 2)));
    }

    #[test]
    fn gaussian_binomial_identities() {
        assert_eq!(gauss_binom(4, 1, 2), big(15));
        assert_eq!(gauss_binom(4, 2, 2), big(35));
        assert_eq!(gauss_binom(5, 2, 2), big(155));
        assert_eq!(gauss_binom(5, 2, 3), big(1210));
        for n in 0..7u32 {
            for k in 0..=n {
                assert_eq!(gauss_binom(n, k, 3), gauss_binom(n, n - k, 3));
            }
            assert_eq!(gauss_binom(n, 0, 7), big(1));
        }
        assert_eq!(gauss_binom(6, 1, 4), big((4u64.pow(6) - 1) / 3));
        assert_eq!(gauss_binom(2, 3, 5), big(0));
    }

    #[test]
    fn projective_line_over_gf2() {
        let pts = pg_points(2, 2).unwrap();
        let want: Vec<Vec<Fe>> =
            vec![vec![Fe(0), Fe(1)], vec![Fe(1), Fe(0)], vec![Fe(1), Fe(1)]];
        assert_eq!(pts, want);
    }

    #[test]
    fn point_counts_and_normalization() {
        for (n, q) in [(3, 2), (3, 4), (4, 3), (3, 5), (3, 8), (4, 9), (6, 2)] {
            let pts = pg_points(n, q).unwrap();
            assert_eq!(
                big(pts.len() as u64),
                gauss_binom(n, 1, q as u64),
                "PG({}, {q})",
                n - 1
            );
            for pt in &pts {
                let first = pt.iter().position(|&x| x != Fe::ZERO).unwrap();
                assert_eq!(pt[first], Fe::ONE);
            }
            let distinct: std::collections::HashSet<_> = pts.iter().collect();
            assert_eq!(distinct.len(), pts.len());
        }
        assert!(pg_points(3, 6).is_err());
    }

    #[test]
    fn fano_plane() {
        let d = pg_design(3, 2).unwrap();
        assert_eq!(d.v(), 7);
        assert_eq!(d.b(), 7);
        assert_eq!(d.uniform_k(), Some(3));
        assert!(d.contains_block(&[0, 1, 2]));
        // Every pair lies in exactly one hyperplane.
        for x in 0..7u32 {
            for y in x + 1..7 {
                let count = d.blocks().filter(|b| b.contains(&x) && b.contains(&y)).count();
                assert_eq!(count, 1, "pair ({x},{y})");
            }
        }
        assert!(pg_design(2, 2).is_err());
    }

    #[test]
    fn hyperplane_design_parameters() {
        let d = pg_design(4, 2).unwrap();
        assert_eq!((d.v(), d.b(), d.uniform_k()), (15, 15, Some(7)));
        for x in 0..15u32 {
            for y in x + 1..15 {
                let count = d.blocks().filter(|b| b.contains(&x) && b.contains(&y)).count();
                assert_eq!(count, 3);
            }
        }
        let d3 = pg_design(3, 3).unwrap();
        assert_eq!((d3.v(), d3.b(), d3.uniform_k()), (13, 13, Some(4)));
    }

    #[test]
    fn line_counts() {
        let f = FiniteField::new(3, 1).unwrap();
        let space = ProjSpace::new(&f, 3).unwrap();
        let lines = pg_lines(&space).unwrap();
        assert_eq!(lines.len(), 13);
        assert!(lines.iter().all(|l| l.len() == 4));
        // Two distinct points determine exactly one line.
        for a in 0..13u32 {
            for b in a + 1..13 {
                let through = lines.iter().filter(|l| l.contains(&a) && l.contains(&b)).count();
                assert_eq!(through, 1);
            }
        }
    }

    #[test]
    fn punctured_line_design() {
        let d = pg_line_design(4, 3).unwrap();
        assert_eq!(d.v(), 40);
        assert_eq!(d.b(), 520);
        assert_eq!(d.uniform_k(), Some(3));
        for x in 0..40u32 {
            for y in x + 1..40 {
                let count = d.blocks().filter(|b| b.contains(&x) && b.contains(&y)).count();
                assert_eq!(count, 2);
            }
        }
        let small = pg_line_design(3, 4).unwrap();
        assert_eq!((small.v(), small.b(), small.uniform_k()), (21, 105, Some(4)));
        // Family conditions: no q = 2, and n-1 must be coprime to q-1.
        assert!(pg_line_design(3, 3).is_err());
        assert!(pg_line_design(3, 2).is_err());
        assert!(pg_line_design(2, 4).is_err());
    }

    #[test]
    fn hermitian_unitals() {
        let d = hermitian_unital(3).unwrap();
        assert_eq!(d.v(), 28);
        assert_eq!(d.uniform_k(), Some(4));
        assert_eq!(d.b(), 63);
        for x in 0..d.v() {
            for y in x + 1..d.v() {
                let count = d.blocks().filter(|b| b.contains(&x) && b.contains(&y)).count();
                assert_eq!(count, 1);
            }
        }
        let d4 = hermitian_unital(4).unwrap();
        assert_eq!((d4.v(), d4.b(), d4.uniform_k()), (65, 208, Some(5)));
        assert!(hermitian_unital(2).is_err());
        assert!(hermitian_unital(6).is_err());
    }

    #[test]
    fn design_storage_invariants() {
        let d = Design::new(5, vec![vec![3, 1], vec![0, 4], vec![1, 2]]).unwrap();
        let blocks: Vec<&[u32]> = d.blocks().collect();
        assert_eq!(blocks, vec![&[0, 4][..], &[1, 2], &[1, 3]]);
        assert!(d.contains_block(&[1, 3]));
        assert!(!d.contains_block(&[0, 1]));
        assert!(Design::new(3, vec![vec![0, 3]]).is_err());
        assert!(Design::new(3, vec![vec![1, 1]]).is_err());
        assert!(Design::new(3, vec![vec![]]).is_err());
        assert!(Design::from_flat(4, vec![0, 2, 4], vec![0, 1, 1, 2]).is_ok());
        assert!(Design::from_flat(4, vec![0, 2, 4], vec![0, 1, 2, 1]).is_err());
        assert!(Design::from_flat(4, vec![0, 2], vec![0, 1, 2]).is_err());
        assert!(Design::from_flat(4, vec![0, 2, 4], vec![1, 2, 0, 1]).is_err());
        // Provenance string travels along but never affects equality.
        let tagged = d.clone().with_meta("triangle-ish");
        assert_eq!(tagged.meta(), "triangle-ish");
        assert_eq!(tagged, d);
    }

    #[test]
    fn flag_transitive_triangle() {
        let d = Design::new(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let s3 = vec![
            Perm::parse_cycles(3, "(1,2)").unwrap(),
            Perm::parse_cycles(3, "(1,2,3)").unwrap(),
        ];
        assert!(design_flag_transitive(&d, &s3).unwrap());
        let just_identity = vec![Perm::identity(3)];
        assert!(!design_flag_transitive(&d, &just_identity).unwrap());
    }

    #[test]
    fn linear_and_frobenius_actions() {
        let f = FiniteField::new(2, 2).unwrap();
        let space = ProjSpace::new(&f, 2).unwrap();
        // Multiplication by a generator permutes the 5 points of PG(1,4).
        let g = f.generator();
        let m = vec![vec![g, Fe::ZERO], vec![Fe::ZERO, Fe::ONE]];
        let perm = space.linear_action(&m).unwrap();
        assert_eq!(perm.degree(), 5);
        assert!(!perm.is_identity());
        let frob = space.frobenius_action(1).unwrap();
        assert_eq!(frob.then(&frob), Perm::identity(5));
    }
}
