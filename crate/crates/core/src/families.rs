//! Construction of the designs themselves.
//!
//! Two infinite families live inside small simple groups: `wbs_design`
//! builds the unital-like 2-(q(q-1)/2, q/2, 1) design whose points are
//! the cyclic subgroups of order q + 1 in PSL2(q), and `suzuki_design`
//! builds the 2-(q^2+1, q, q-1) design carried by Sz(q).  Everything else
//! comes from a catalog of thirteen base-block constructions over small
//! groups, reachable through `table1_design`.
//!
//! Constructions do not trust their own derivations: each one re-verifies
//! the parameter row, the block count, and flag transitivity before
//! returning, and fails with a certificate error rather than hand back a
//! wrong design.

use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::atlas;
use crate::error::Error;
use crate::geom::{design_flag_transitive, Design};
use crate::perm::{conjugation_action, orbits_of, set_orbit, Group, Perm};
use crate::verify::{self, Params};

/// Attempts before a base-block search reports failure.
const SEARCH_ATTEMPTS: usize = 10_000;
/// Unions of subgroup orbits tried per candidate subgroup.
const UNION_CAP: usize = 4_096;
/// Block cap for `orbit_design` when the caller has no expected count.
const ORBIT_BLOCK_LIMIT: usize = 1 << 20;

const BASE_BLOCK_SEED: u64 = 0xB10C_5EED;
const TWO_GEN_SEED: u64 = 0x2_6E6E;
const CENTRE_SEED: u64 = 0xCE_47E0;

/// One line of the design catalog: the parameter row, the acting group,
/// stabilizer orders, and the base block in the catalog's own 1-indexed
/// point labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaseBlockRecord {
    pub line: u32,
    /// Name of the acting group, e.g. "PSL2(7)" or "M22:2".
    pub group: &'static str,
    pub v: u32,
    pub b: u64,
    pub r: u64,
    pub k: u32,
    pub lambda: u64,
    pub point_stab_order: u128,
    pub block_stab_order: u128,
    /// Base block in the catalog's labeling (points 1..=v).  Our
    /// constructions label points in their own canonical order, so
    /// `table1_design` treats this as a hint: it is used when its orbit
    /// reproduces the row and a search takes over otherwise.
    pub base_block: &'static [u32],
}

static RECORDS: [BaseBlockRecord; 13] = [
    BaseBlockRecord { line: 1, group: "PSL2(5)", v: 6, b: 10, r: 5, k: 3, lambda: 2, point_stab_order: 10, block_stab_order: 6, base_block: &[1, 2, 3] },
    BaseBlockRecord { line: 2, group: "PSL2(7)", v: 7, b: 7, r: 3, k: 3, lambda: 1, point_stab_order: 24, block_stab_order: 24, base_block: &[1, 2, 3] },
    BaseBlockRecord { line: 3, group: "PSL2(7)", v: 8, b: 14, r: 7, k: 4, lambda: 3, point_stab_order: 21, block_stab_order: 12, base_block: &[1, 2, 3, 5] },
    BaseBlockRecord { line: 4, group: "PSL2(8)", v: 28, b: 36, r: 9, k: 7, lambda: 2, point_stab_order: 18, block_stab_order: 14, base_block: &[1, 6, 12, 13, 14, 24, 28] },
    BaseBlockRecord { line: 5, group: "PSL2(9)", v: 10, b: 15, r: 9, k: 6, lambda: 5, point_stab_order: 36, block_stab_order: 24, base_block: &[1, 2, 3, 4, 5, 6] },
    BaseBlockRecord { line: 6, group: "PSL2(11)", v: 11, b: 11, r: 5, k: 5, lambda: 2, point_stab_order: 60, block_stab_order: 60, base_block: &[1, 2, 3, 5, 11] },
    BaseBlockRecord { line: 7, group: "M11", v: 12, b: 22, r: 11, k: 6, lambda: 5, point_stab_order: 660, block_stab_order: 360, base_block: &[1, 2, 3, 4, 11, 12] },
    BaseBlockRecord { line: 8, group: "M22", v: 22, b: 77, r: 21, k: 6, lambda: 5, point_stab_order: 20160, block_stab_order: 5760, base_block: &[1, 2, 3, 4, 7, 18] },
    BaseBlockRecord { line: 9, group: "M22:2", v: 22, b: 77, r: 21, k: 6, lambda: 5, point_stab_order: 40320, block_stab_order: 11520, base_block: &[1, 2, 3, 4, 7, 18] },
    BaseBlockRecord { line: 10, group: "S6", v: 10, b: 15, r: 9, k: 6, lambda: 5, point_stab_order: 72, block_stab_order: 48, base_block: &[1, 2, 3, 4, 5, 6] },
    BaseBlockRecord { line: 11, group: "A7", v: 15, b: 35, r: 7, k: 3, lambda: 1, point_stab_order: 168, block_stab_order: 72, base_block: &[1, 4, 5] },
    BaseBlockRecord { line: 12, group: "A7", v: 15, b: 15, r: 7, k: 7, lambda: 3, point_stab_order: 168, block_stab_order: 168, base_block: &[1, 2, 3, 8, 9, 10, 11] },
    BaseBlockRecord { line: 13, group: "A8", v: 15, b: 35, r: 7, k: 3, lambda: 1, point_stab_order: 1344, block_stab_order: 576, base_block: &[1, 4, 5] },
];

pub fn table1_records() -> &'static [BaseBlockRecord] {
    &RECORDS
}

pub fn table1_record(line: u32) -> Result<&'static BaseBlockRecord, Error> {
    RECORDS
        .iter()
        .find(|r| r.line == line)
        .ok_or_else(|| Error::DesignInvalid(format!("catalog lines run 1 through 13, got {line}")))
}

/// x^e by square and multiply.
fn perm_power(x: &Perm, mut e: u128) -> Perm {
    let mut base = x.clone();
    let mut acc = Perm::identity(x.degree());
    while e > 0 {
        if e & 1 == 1 {
            acc.then_in_place(&base);
        }
        base = base.then(&base);
        e >>= 1;
    }
    acc
}

/// A certified copy of the group on at most two generators, found by a
/// seeded random search.  Groups that come out of matrix constructions
/// carry generator lists as long as a subgroup family, which makes every
/// later orbit walk pay for it; this cuts the list down once.
fn two_generator_form(g: &Group, seed: u64) -> Result<Group, Error> {
    if g.gens().len() <= 2 {
        return Ok(g.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..500 {
        let a = g.random_element(&mut rng);
        let b = g.random_element(&mut rng);
        if let Ok(small) = Group::with_order(g.degree(), vec![a, b], g.order()) {
            return Ok(small);
        }
    }
    Err(Error::SearchExhausted(
        "no generating pair found in 500 draws".into(),
    ))
}

/// The conjugates of a cyclic subgroup of order q + 1 in PSL2(q), for
/// even q, together with the conjugation action on them.  Returns the
/// action, the conjugates as sorted element lists in point order, and
/// the involutions of the group in its natural degree q + 1 form.
fn psl2_cores(q: u32) -> Result<(Group, Vec<Vec<Perm>>, Vec<Perm>), Error> {
    let g = atlas::psl_group(2, q)?;
    let order = g.order();
    let elems = g.elements(order as usize)?;
    let core_order = (q + 1) as u128;
    let z = elems
        .iter()
        .find(|e| e.order() == core_order)
        .cloned()
        .ok_or_else(|| {
            Error::Certificate(format!("PSL2({q}) has no element of order {}", q + 1))
        })?;
    let core = Group::with_order(g.degree(), vec![z], core_order)?;
    let (action, class) = conjugation_action(&g, &core)?;
    // The normalizer of the core is dihedral of order 2(q + 1), so the
    // class has |G| / 2(q + 1) members and the action stays faithful.
    let expect_v = order / (2 * core_order);
    if class.len() as u128 != expect_v {
        return Err(Error::Certificate(format!(
            "order q + 1 cores fall into a class of {} in PSL2({q}), expected {expect_v}",
            class.len()
        )));
    }
    if action.order() != order {
        return Err(Error::Certificate(format!(
            "conjugation action of PSL2({q}) on its cores is not faithful"
        )));
    }
    let involutions: Vec<Perm> = elems.into_iter().filter(|e| e.order() == 2).collect();
    Ok((action, class, involutions))
}

/// The 2-(q(q-1)/2, q/2, 1) design in PSL2(q) for q = 2^a, a >= 3.
///
/// Points are the conjugates of a cyclic subgroup of order q + 1; the
/// block of an involution t collects the cores t normalizes.  (No
/// involution lies inside a core, which has odd order.)  Returns the
/// design and the conjugation action of PSL2(q) on its points, after
/// checking the parameter row and flag transitivity.
pub fn wbs_design(q: u32) -> Result<(Design, Group), Error> {
    if !q.is_power_of_two() || q < 8 {
        return Err(Error::BadGeometry(format!(
            "the construction needs q = 2^a with a >= 3, got {q}"
        )));
    }
    if q > 32 {
        return Err(Error::ResourceGuard(format!(
            "enumerating the involutions of PSL2({q}) is out of reach here; sized for q <= 32"
        )));
    }
    let (action, class, involutions) = psl2_cores(q)?;
    let v = class.len() as u32;
    if involutions.len() as u64 != q as u64 * q as u64 - 1 {
        return Err(Error::Certificate(format!(
            "PSL2({q}) has {} involutions, expected {}",
            involutions.len(),
            q as u64 * q as u64 - 1
        )));
    }
    // One generator per core is enough to test whether t normalizes it:
    // conjugation fixes the core exactly when it fixes the generator's
    // span, and the element lists are sorted for binary search.
    let mut core_gens = Vec::with_capacity(class.len());
    for members in &class {
        let z = members
            .iter()
            .find(|e| e.order() == (q + 1) as u128)
            .ok_or_else(|| Error::Certificate("a core lost its generator".into()))?;
        core_gens.push(z);
    }
    let blocks: Vec<Vec<u32>> = involutions
        .iter()
        .map(|t| {
            (0..class.len() as u32)
                .filter(|&i| {
                    let w = core_gens[i as usize].conjugate_by(t);
                    class[i as usize].binary_search(&w).is_ok()
                })
                .collect()
        })
        .collect();
    let d = Design::new(v, blocks)?.with_meta(format!("wbs({q})"));
    let p = verify::params(&d)?;
    let row = (q * (q - 1) / 2, q as u64 * q as u64 - 1, (q + 1) as u64, q / 2, 1u64);
    if (p.v, p.b, p.r, p.k, p.lambda) != row {
        return Err(Error::Certificate(format!(
            "built ({}, {}, {}, {}, {}), expected {row:?}",
            p.v, p.b, p.r, p.k, p.lambda
        )));
    }
    if !design_flag_transitive(&d, action.gens())? {
        return Err(Error::Certificate(format!(
            "PSL2({q}) is not flag-transitive on the core design"
        )));
    }
    Ok((d, action))
}

/// The 2-(q^2+1, q, q-1) design in the Suzuki group Sz(q).
///
/// With K the product of the centre of a Sylow 2-subgroup of a point
/// stabilizer and a two-point torus of order q - 1, the base block is
/// the K-orbit of length q and the design is its block orbit.  Returns
/// the design and a certified two-generator copy of Sz(q), after
/// checking the parameter row and flag transitivity.
pub fn suzuki_design(q: u32) -> Result<(Design, Group), Error> {
    if !q.is_power_of_two() || q < 8 || q.trailing_zeros() % 2 == 0 {
        return Err(Error::BadGeometry(format!(
            "Sz(q) needs q = 2^(2m+1) with m >= 1, got {q}"
        )));
    }
    if q > 32 {
        return Err(Error::ResourceGuard(format!(
            "Sz({q}) acts on {} points; sized for q <= 32",
            q as u64 * q as u64 + 1
        )));
    }
    let x = two_generator_form(&atlas::suzuki_group(q)?, TWO_GEN_SEED)?;
    let degree = x.degree();
    let stab = x.point_stabilizer(0)?;

    // Centre of the Sylow 2-subgroup of the stabilizer.  The stabilizer
    // is a Frobenius group q^2 : (q - 1), so every element of even order
    // lies in the kernel, and the kernel's involutions together form the
    // centre minus the identity, q - 1 of them.  Powering random
    // elements down to involutions therefore lands in the centre, and
    // the certified order q tells us when we have all of it.
    let mut rng = ChaCha8Rng::seed_from_u64(CENTRE_SEED);
    let mut centre_gens: Vec<Perm> = Vec::new();
    let mut centre = None;
    for _ in 0..20_000 {
        let s = stab.random_element(&mut rng);
        let o = s.order();
        if o % 2 != 0 {
            continue;
        }
        let t = perm_power(&s, o / 2);
        if centre_gens.contains(&t) {
            continue;
        }
        centre_gens.push(t);
        if let Ok(z) = Group::with_order(degree, centre_gens.clone(), q as u128) {
            centre = Some(z);
            break;
        }
    }
    let centre = centre.ok_or_else(|| {
        Error::Certificate(format!("could not assemble the order {q} centre from involutions"))
    })?;

    // Two-point torus: the stabilizer of a second point, cyclic of order
    // q - 1.  It normalizes the centre (a characteristic subgroup of the
    // normal Sylow 2-subgroup), so together they give K of order q(q-1).
    let torus = stab.point_stabilizer(1)?;
    if torus.order() != (q - 1) as u128 {
        return Err(Error::Certificate(format!(
            "two-point stabilizer has order {}, expected {}",
            torus.order(),
            q - 1
        )));
    }
    let mut kgens = centre.gens().to_vec();
    kgens.extend(torus.gens().iter().cloned());
    let k_group = Group::with_order(degree, kgens, q as u128 * (q as u128 - 1))?;

    let base = orbits_of(k_group.gens(), degree)
        .into_iter()
        .find(|o| o.len() == q as usize)
        .ok_or_else(|| Error::Certificate(format!("no K-orbit of length {q}")))?;
    let expect_b = q as usize * (q as usize * q as usize + 1);
    let blocks = set_orbit(x.gens(), &base, expect_b)?;
    if blocks.len() != expect_b {
        return Err(Error::Certificate(format!(
            "base block orbit has {} blocks, expected {expect_b}",
            blocks.len()
        )));
    }
    let d = Design::new(degree, blocks)?.with_meta(format!("suzuki({q})"));
    let p = verify::params(&d)?;
    let row = (
        q * q + 1,
        expect_b as u64,
        q as u64 * q as u64,
        q,
        (q - 1) as u64,
    );
    if (p.v, p.b, p.r, p.k, p.lambda) != row {
        return Err(Error::Certificate(format!(
            "built ({}, {}, {}, {}, {}), expected {row:?}",
            p.v, p.b, p.r, p.k, p.lambda
        )));
    }
    if !design_flag_transitive(&d, x.gens())? {
        return Err(Error::Certificate(format!(
            "Sz({q}) is not flag-transitive on the design"
        )));
    }
    Ok((d, x))
}

/// The design whose blocks are every image of `base` under the group.
pub fn orbit_design(g: &Group, base: &[u32]) -> Result<Design, Error> {
    if base.is_empty() {
        return Err(Error::DesignInvalid("empty base block".into()));
    }
    if let Some(&p) = base.iter().find(|&&p| p >= g.degree()) {
        return Err(Error::DesignInvalid(format!(
            "base point {p} is outside the degree {} point set",
            g.degree()
        )));
    }
    let blocks = set_orbit(g.gens(), base, ORBIT_BLOCK_LIMIT)?;
    Design::new(g.degree(), blocks)
}

/// Hash of a group's full element set, independent of generating set.
fn element_set_hash(s: &Group) -> Result<u64, Error> {
    let mut elems = s.elements(s.order() as usize)?;
    elems.sort_unstable();
    let mut h = std::collections::hash_map::DefaultHasher::new();
    for e in &elems {
        e.hash(&mut h);
    }
    Ok(h.finish())
}

/// All unions of the given orbits with `k` points in total, each sorted,
/// capped at `UNION_CAP` results.
fn unions_of_size(orbits: &[Vec<u32>], k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut picked: Vec<usize> = Vec::new();
    fn walk(
        orbits: &[Vec<u32>],
        from: usize,
        left: usize,
        picked: &mut Vec<usize>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if left == 0 {
            let mut union: Vec<u32> =
                picked.iter().flat_map(|&i| orbits[i].iter().copied()).collect();
            union.sort_unstable();
            out.push(union);
            return;
        }
        for i in from..orbits.len() {
            if out.len() >= UNION_CAP {
                return;
            }
            if orbits[i].len() > left {
                continue;
            }
            picked.push(i);
            walk(orbits, i + 1, left - orbits[i].len(), picked, out);
            picked.pop();
        }
    }
    walk(orbits, 0, k as usize, &mut picked, &mut out);
    out
}

/// Searches for a base block of size `k` whose orbit is a 2-design with
/// the given lambda, assuming a block stabilizer of order `stab_hint`.
///
/// The search draws random pairs and triples of group elements with a
/// fixed seed, keeps the subgroups whose certified order is exactly the
/// hint, and tries every union of each subgroup's orbits with k points.
/// A candidate is accepted when its block orbit verifies as a 2-design
/// with the requested lambda.  Subgroups are deduplicated by element
/// set, and the whole search is deterministic.
pub fn find_base_block(g: &Group, k: u32, lambda: u64, stab_hint: u128) -> Result<Vec<u32>, Error> {
    let v = g.degree();
    if k < 2 || k > v {
        return Err(Error::DesignInvalid(format!(
            "block size {k} on {v} points"
        )));
    }
    if orbits_of(g.gens(), v).len() != 1 {
        return Err(Error::DesignInvalid(
            "the base block search needs a transitive group".into(),
        ));
    }
    // A verifying design's block count is pinned by (v, k, lambda), and
    // the hinted stabilizer must account for exactly that many cosets.
    let pairs = lambda * v as u64 * (v as u64 - 1);
    let cosets = k as u64 * (k as u64 - 1);
    if pairs % cosets != 0 {
        return Err(Error::SearchExhausted(format!(
            "no 2-({v}, {k}, {lambda}) design exists: block count is not integral"
        )));
    }
    let expect_b = (pairs / cosets) as usize;
    if stab_hint == 0 || g.order() != stab_hint * expect_b as u128 {
        return Err(Error::SearchExhausted(format!(
            "a block stabilizer of order {stab_hint} does not match {expect_b} blocks in a group of order {}",
            g.order()
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(BASE_BLOCK_SEED);
    // Elements of the wanted subgroup have order dividing its order, so
    // rejection-sample each draw down to the plausible ones; that alone
    // raises the rate of pairs and triples landing in a common conjugate
    // by a large factor.
    let draw = |rng: &mut ChaCha8Rng| {
        for _ in 0..64 {
            let x = g.random_element(rng);
            if stab_hint % x.order() == 0 {
                return x;
            }
        }
        g.random_element(rng)
    };
    let mut seen_subgroups: HashSet<u64> = HashSet::new();
    let mut seen_blocks: HashSet<Vec<u32>> = HashSet::new();
    for attempt in 0..SEARCH_ATTEMPTS {
        let mut gens = vec![draw(&mut rng), draw(&mut rng)];
        if attempt % 2 == 1 {
            gens.push(draw(&mut rng));
        }
        // The order check accepts here only when the chain completes at
        // exactly the hint; a draw generating something larger is cut
        // short as soon as its chain passes the hint.  Either way the
        // real guarantee comes from verifying the candidate's orbit.
        let s = match Group::with_order(v, gens, stab_hint) {
            Ok(s) => s,
            Err(_) => continue,
        };
        if !seen_subgroups.insert(element_set_hash(&s)?) {
            continue;
        }
        for cand in unions_of_size(&orbits_of(s.gens(), v), k) {
            if !seen_blocks.insert(cand.clone()) {
                continue;
            }
            let blocks = match set_orbit(g.gens(), &cand, expect_b) {
                Ok(b) => b,
                Err(_) => continue,
            };
            if blocks.len() != expect_b {
                continue;
            }
            let Ok(d) = Design::new(v, blocks) else { continue };
            if let Ok(p) = verify::params(&d) {
                if p.k == k && p.lambda == lambda {
                    return Ok(cand);
                }
            }
        }
    }
    Err(Error::SearchExhausted(format!(
        "no size {k} base block with lambda {lambda} in {SEARCH_ATTEMPTS} attempts"
    )))
}

/// The acting group for a catalog line, labeled in our canonical order.
fn table1_group(line: u32) -> Result<Group, Error> {
    match line {
        1 => atlas::psl_group(2, 5),
        2 => atlas::psl_group(3, 2),
        3 => atlas::psl_group(2, 7),
        // PSL2(8) on the 28 conjugates of its order 9 cyclic subgroups.
        4 => psl2_cores(8).map(|(action, _, _)| action),
        5 => atlas::psl_group(2, 9),
        6 => atlas::named_group("PSL2(11)@11"),
        7 => atlas::named_group("M11@12"),
        8 => atlas::named_group("M22@22"),
        9 => atlas::named_group("M22:2@22"),
        10 => atlas::named_group("S6@10"),
        11 | 12 => atlas::named_group("A7@15"),
        13 => atlas::named_group("A8@15"),
        _ => Err(Error::DesignInvalid(format!(
            "catalog lines run 1 through 13, got {line}"
        ))),
    }
}

/// Whether the given base block's orbit reproduces the record's row.
fn row_matches(g: &Group, base: &[u32], rec: &BaseBlockRecord) -> bool {
    if base.iter().any(|&p| p >= g.degree()) {
        return false;
    }
    let Ok(d) = orbit_design(g, base) else {
        return false;
    };
    match verify::params(&d) {
        Ok(p) => (p.v, p.b, p.r, p.k, p.lambda) == (rec.v, rec.b, rec.r, rec.k, rec.lambda),
        Err(_) => false,
    }
}

/// Builds a catalog line: the design, the group acting on it, and the
/// verified parameters.
///
/// The recorded base block is tried first; when our labeling disagrees
/// with the catalog's, a deterministic search stands in for it.  The
/// result is checked against the full record (parameters, group order
/// against the point stabilizer, coprimality of r and lambda, flag
/// transitivity) and any mismatch is an error.
pub fn table1_design(line: u32) -> Result<(Design, Group, Params), Error> {
    let rec = table1_record(line)?;
    let g = table1_group(line)?;
    if g.degree() != rec.v || g.order() != rec.v as u128 * rec.point_stab_order {
        return Err(Error::Certificate(format!(
            "line {line}: expected {} of order {} on {} points, built order {} on {}",
            rec.group,
            rec.v as u128 * rec.point_stab_order,
            rec.v,
            g.order(),
            g.degree()
        )));
    }
    let literal: Vec<u32> = rec.base_block.iter().map(|&p| p - 1).collect();
    let base = if row_matches(&g, &literal, rec) {
        literal
    } else {
        find_base_block(&g, rec.k, rec.lambda, rec.block_stab_order)?
    };
    let d = orbit_design(&g, &base)?
        .with_meta(format!("table1({line}) {} on {} points", rec.group, rec.v));
    let p = verify::params(&d)?;
    if (p.v, p.b, p.r, p.k, p.lambda) != (rec.v, rec.b, rec.r, rec.k, rec.lambda) {
        return Err(Error::Certificate(format!(
            "line {line} built ({}, {}, {}, {}, {}), the record says ({}, {}, {}, {}, {})",
            p.v, p.b, p.r, p.k, p.lambda, rec.v, rec.b, rec.r, rec.k, rec.lambda
        )));
    }
    if !p.coprime_r_lambda {
        return Err(Error::Certificate(format!(
            "line {line}: r = {} and lambda = {} are not coprime",
            p.r, p.lambda
        )));
    }
    if !design_flag_transitive(&d, g.gens())? {
        return Err(Error::Certificate(format!(
            "line {line}: {} is not flag-transitive on the design",
            rec.group
        )));
    }
    Ok((d, g, p))
}
