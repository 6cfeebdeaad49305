//! Checks that a block design really is a 2-design, by direct counting.
//!
//! `params` walks every block once and accumulates point and pair
//! coverage, so its verdict does not depend on how the design was built.
//! `pair_counts` recomputes pair coverage by a different route (per-point
//! incidence bitsets intersected pairwise) and serves as a cross-check on
//! `params` itself in tests.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geom::Design;

/// Parameters of a verified 2-design.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub v: u32,
    pub b: u64,
    pub r: u64,
    pub k: u32,
    pub lambda: u64,
    /// As many blocks as points (equivalently r = k).
    pub symmetric: bool,
    /// gcd(r, lambda) = 1.
    pub coprime_r_lambda: bool,
    /// 2 < k < v - 1.
    pub nontrivial: bool,
}

impl Params {
    fn from_counts(v: u32, b: u64, r: u64, k: u32, lambda: u64) -> Params {
        Params {
            v,
            b,
            r,
            k,
            lambda,
            symmetric: b == v as u64,
            coprime_r_lambda: num_integer::gcd(r, lambda) == 1,
            nontrivial: 2 < k && (k as u64) < v as u64 - 1,
        }
    }
}

fn pair_slot(v: u32, x: u32, y: u32) -> usize {
    // Index into the strict upper triangle, rows x < y.
    debug_assert!(x < y && y < v);
    let (v, x, y) = (v as usize, x as usize, y as usize);
    x * v - x * (x + 1) / 2 + (y - x - 1)
}

/// Checks the design is a 2-design and reports its parameters.  Errors
/// name a witness: the first block, point, or pair violating uniformity.
pub fn params(d: &Design) -> Result<Params, Error> {
    let v = d.v();
    if v < 2 {
        return Err(Error::DesignInvalid("need at least two points".into()));
    }
    if d.b() == 0 {
        return Err(Error::DesignInvalid("no blocks".into()));
    }
    let k = match d.uniform_k() {
        Some(k) => k,
        None => {
            let k0 = d.block(0).len();
            let bad = (1..d.b()).find(|&i| d.block(i).len() != k0).unwrap();
            return Err(Error::DesignInvalid(format!(
                "block sizes differ: block 0 has {k0} points, block {bad} has {}",
                d.block(bad).len()
            )));
        }
    };
    if k < 2 {
        return Err(Error::DesignInvalid("blocks of one point cover no pairs".into()));
    }

    let mut point_count = vec![0u64; v as usize];
    let pair_total = v as u64 * (v as u64 - 1) / 2;
    if pair_total > u32::MAX as u64 {
        return Err(Error::ResourceGuard(format!(
            "{v} points give {pair_total} pairs, beyond the counting table"
        )));
    }
    let mut pair_count = vec![0u32; pair_total as usize];
    for block in d.blocks() {
        for (i, &x) in block.iter().enumerate() {
            point_count[x as usize] += 1;
            for &y in &block[i + 1..] {
                pair_count[pair_slot(v, x, y)] += 1;
            }
        }
    }

    let r = point_count[0];
    if let Some(p) = point_count.iter().position(|&c| c != r) {
        return Err(Error::DesignInvalid(format!(
            "point 0 lies in {r} blocks but point {p} lies in {}",
            point_count[p]
        )));
    }
    let lambda = pair_count[0] as u64;
    if let Some(slot) = pair_count.iter().position(|&c| c as u64 != lambda) {
        // Recover the pair from its slot for the message.
        let mut x = 0u32;
        let mut base = 0usize;
        while base + (v - x - 1) as usize <= slot {
            base += (v - x - 1) as usize;
            x += 1;
        }
        let y = x + 1 + (slot - base) as u32;
        return Err(Error::DesignInvalid(format!(
            "pair (0,1) lies in {lambda} blocks but pair ({x},{y}) lies in {}",
            pair_count[slot]
        )));
    }
    if lambda == 0 {
        return Err(Error::DesignInvalid("no pair is covered; k must be at least 2".into()));
    }

    let p = Params::from_counts(v, d.b() as u64, r, k, lambda);
    // Double counting of flags and of pair-flags; these follow from the
    // counts above, so a failure here is a bug, not bad input.
    debug_assert_eq!(p.b * p.k as u64, p.v as u64 * p.r);
    debug_assert_eq!(p.r * (p.k as u64 - 1), p.lambda * (p.v as u64 - 1));
    Ok(p)
}

/// Histogram of pair coverage: how many point pairs lie in exactly c
/// blocks, for each c that occurs.  Computed from per-point incidence
/// bitsets, independently of `params`.
pub fn pair_counts(d: &Design) -> Result<BTreeMap<u64, u64>, Error> {
    let v = d.v() as usize;
    let words = d.b().div_ceil(64);
    let bits = (v as u64) * (words as u64) * 8;
    if bits > 1 << 31 {
        return Err(Error::ResourceGuard(format!("incidence bitsets would need {bits} bytes")));
    }
    let mut inc = vec![0u64; v * words];
    for (bi, block) in d.blocks().enumerate() {
        for &p in block {
            inc[p as usize * words + bi / 64] |= 1u64 << (bi % 64);
        }
    }
    let mut hist = BTreeMap::new();
    for x in 0..v {
        let row_x = &inc[x * words..(x + 1) * words];
        for y in x + 1..v {
            let row_y = &inc[y * words..(y + 1) * words];
            let c: u64 =
                row_x.iter().zip(row_y).map(|(&a, &b)| (a & b).count_ones() as u64).sum();
            *hist.entry(c).or_insert(0) += 1;
        }
    }
    Ok(hist)
}

/// If a design with these parameters could be the residual of a symmetric
/// design, that symmetric design's parameters: (v + k + lambda, k + lambda,
/// lambda), available exactly when lambda <= 2 and r = k + lambda.
pub fn embeddable_flag(p: &Params) -> Option<(u64, u64, u64)> {
    if p.lambda > 2 {
        return None;
    }
    (p.r == p.k as u64 + p.lambda)
        .then(|| (p.v as u64 + p.k as u64 + p.lambda, p.k as u64 + p.lambda, p.lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom;

    #[test]
    fn fano_parameters() {
        let d = geom::pg_design(3, 2).unwrap();
        let p = params(&d).unwrap();
        assert_eq!((p.v, p.b, p.r, p.k, p.lambda), (7, 7, 3, 3, 1));
        assert!(p.symmetric);
        assert!(p.nontrivial);
        assert!(p.coprime_r_lambda);
    }

    #[test]
    fn punctured_line_parameters() {
        let d = geom::pg_line_design(4, 3).unwrap();
        let p = params(&d).unwrap();
        assert_eq!((p.v, p.b, p.r, p.k, p.lambda), (40, 520, 39, 3, 2));
        assert!(!p.symmetric);
        assert!(p.nontrivial);
        assert!(p.coprime_r_lambda); // gcd(39, 2) = 1
    }

    #[test]
    fn unital_parameters() {
        let d = geom::hermitian_unital(3).unwrap();
        let p = params(&d).unwrap();
        assert_eq!((p.v, p.b, p.r, p.k, p.lambda), (28, 63, 9, 4, 1));
        assert!(!p.symmetric);
        assert!(p.nontrivial);
    }

    #[test]
    fn rejects_non_designs() {
        // Unequal block sizes.
        let d = Design::new(4, vec![vec![0, 1], vec![0, 1, 2]]).unwrap();
        let e = params(&d).unwrap_err().to_string();
        assert!(e.contains("block sizes differ"), "{e}");

        // A pair left uncovered: drop one block from the Fano plane.
        let fano = geom::pg_design(3, 2).unwrap();
        let trimmed: Vec<Vec<u32>> = fano.blocks().skip(1).map(|b| b.to_vec()).collect();
        let d = Design::new(7, trimmed).unwrap();
        let e = params(&d).unwrap_err().to_string();
        assert!(e.contains("lies in"), "{e}");

        // Uneven point coverage with k uniform.
        let d = Design::new(4, vec![vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap();
        assert!(params(&d).is_err());

        // Blocks of size one cover no pairs.
        let d = Design::new(3, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert!(params(&d).is_err());
    }

    #[test]
    fn pair_count_oracle_agrees() {
        for d in [
            geom::pg_design(3, 2).unwrap(),
            geom::pg_design(4, 2).unwrap(),
            geom::hermitian_unital(3).unwrap(),
        ] {
            let p = params(&d).unwrap();
            let hist = pair_counts(&d).unwrap();
            let v = d.v() as u64;
            assert_eq!(hist.len(), 1);
            assert_eq!(hist[&p.lambda], v * (v - 1) / 2);
        }
        // A non-design shows a spread of coverage counts.
        let d = Design::new(4, vec![vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap();
        let hist = pair_counts(&d).unwrap();
        assert_eq!(hist.get(&0), Some(&3)); // pairs inside {1,2,3}
        assert_eq!(hist.get(&1), Some(&3)); // pairs through 0
    }

    #[test]
    fn fisher_inequality_on_verified_designs() {
        for d in [
            geom::pg_design(3, 2).unwrap(),
            geom::pg_line_design(3, 4).unwrap(),
            geom::hermitian_unital(4).unwrap(),
        ] {
            let p = params(&d).unwrap();
            assert!(p.b >= p.v as u64);
            assert!(p.r >= p.k as u64);
        }
    }

    #[test]
    fn residual_embedding() {
        let mk = |v: u32, b: u64, r: u64, k: u32, lambda: u64| Params {
            v,
            b,
            r,
            k,
            lambda,
            symmetric: b == v as u64,
            coprime_r_lambda: num_integer::gcd(r, lambda) == 1,
            nontrivial: true,
        };
        // The residual of a symmetric 2-(11,5,2) is a 2-(6,3,2).
        assert_eq!(embeddable_flag(&mk(6, 10, 5, 3, 2)), Some((11, 5, 2)));
        // r = 17 = k + lambda with k = 15, lambda = 2.
        assert_eq!(embeddable_flag(&mk(120, 136, 17, 15, 2)), Some((137, 17, 2)));
        // lambda = 1 with r = k + 1.
        assert_eq!(embeddable_flag(&mk(6, 10, 4, 3, 1)), Some((10, 4, 1)));
        // The Fano plane has r = k: not quasi-residual.
        assert_eq!(embeddable_flag(&mk(7, 7, 3, 3, 1)), None);
        // Out of scope for lambda > 2 even when r = k + lambda.
        assert_eq!(embeddable_flag(&mk(16, 48, 9, 6, 3)), None);
    }

    #[test]
    fn pair_slots_are_a_bijection() {
        let v = 9;
        let mut seen = vec![false; (v as usize * (v as usize - 1)) / 2];
        for x in 0..v {
            for y in x + 1..v {
                let s = pair_slot(v, x, y);
                assert!(!seen[s]);
                seen[s] = true;
            }
        }
        assert!(seen.iter().all(|&b| b));
    }
}
