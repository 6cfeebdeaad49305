//! Exact integer screening of candidate 2-design parameter sets.
//!
//! Everything here is integer arithmetic, no floats: candidate replication
//! numbers come from divisor analysis, candidate parameter tuples from
//! [`feasible_params`], and whole families of primitive actions are retired
//! through [`eliminate`] driven by the case catalogs shipped under `data/`.
//! The subdegree catalog holds divisor bounds for suborbit lengths of
//! classical-socle actions; its formulas stay symbolic in the data files
//! and are parsed and evaluated on demand against caller-supplied bindings,
//! so a single rule covers every parameter choice it is valid for.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geom::gauss_binom;

// ---------------------------------------------------------------------------
// Symbolic expressions
// ---------------------------------------------------------------------------

/// Arithmetic expression over named integer symbols: `+ - * / % ^`,
/// `gcd(x, y)`, integer literals, and lowercase symbol names.  Division
/// must be exact at evaluation time; `^` takes a nonnegative exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Rem(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Gcd(Box<Expr>, Box<Expr>),
}

/// Symbol table for expression evaluation.
pub type Bindings = BTreeMap<String, BigInt>;

/// Builds a symbol table from small integer pairs.
pub fn bind(pairs: &[(&str, i64)]) -> Bindings {
    pairs
        .iter()
        .map(|&(s, v)| (s.to_string(), BigInt::from(v)))
        .collect()
}

struct ExprParser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn fail(&self, what: &str) -> Error {
        Error::SieveData(format!("{what} at byte {} of {:?}", self.pos, self.text))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(b'%') => {
                    self.pos += 1;
                    lhs = Expr::Rem(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            // Right associative, and unary minus in the exponent is allowed.
            let exp = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.fail("expected closing parenthesis"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let lit = &self.text[start..self.pos];
                Ok(Expr::Int(lit.parse::<BigInt>().expect("digit run parses")))
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_lowercase()
                        || self.bytes[self.pos].is_ascii_digit())
                {
                    self.pos += 1;
                }
                let name = &self.text[start..self.pos];
                if self.peek() == Some(b'(') {
                    if name != "gcd" {
                        return Err(self.fail("the only function is gcd"));
                    }
                    self.pos += 1;
                    let a = self.expr()?;
                    if self.peek() != Some(b',') {
                        return Err(self.fail("expected comma in gcd"));
                    }
                    self.pos += 1;
                    let b = self.expr()?;
                    if self.peek() != Some(b')') {
                        return Err(self.fail("expected closing parenthesis in gcd"));
                    }
                    self.pos += 1;
                    return Ok(Expr::Gcd(Box::new(a), Box::new(b)));
                }
                Ok(Expr::Sym(name.to_string()))
            }
            _ => Err(self.fail("expected a number, symbol, or parenthesis")),
        }
    }
}

impl Expr {
    /// Parses the infix syntax used by the data catalogs.
    pub fn parse(text: &str) -> Result<Expr> {
        let mut p = ExprParser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.fail("trailing input"));
        }
        Ok(e)
    }

    /// Evaluates against a symbol table.  Unbound symbols, inexact
    /// division, zero denominators, and out-of-range exponents are errors.
    pub fn eval(&self, bindings: &Bindings) -> Result<BigInt> {
        match self {
            Expr::Int(v) => Ok(v.clone()),
            Expr::Sym(s) => bindings
                .get(s)
                .cloned()
                .ok_or_else(|| Error::SieveData(format!("symbol {s:?} is not bound"))),
            Expr::Neg(e) => Ok(-e.eval(bindings)?),
            Expr::Add(a, b) => Ok(a.eval(bindings)? + b.eval(bindings)?),
            Expr::Sub(a, b) => Ok(a.eval(bindings)? - b.eval(bindings)?),
            Expr::Mul(a, b) => Ok(a.eval(bindings)? * b.eval(bindings)?),
            Expr::Div(a, b) => {
                let n = a.eval(bindings)?;
                let d = b.eval(bindings)?;
                if d.is_zero() {
                    return Err(Error::SieveData("division by zero".into()));
                }
                let (quo, rem) = n.div_rem(&d);
                if !rem.is_zero() {
                    return Err(Error::SieveData(format!("{d} does not divide {n} evenly")));
                }
                Ok(quo)
            }
            Expr::Rem(a, b) => {
                let n = a.eval(bindings)?;
                let d = b.eval(bindings)?;
                if d.is_zero() {
                    return Err(Error::SieveData("remainder by zero".into()));
                }
                Ok(n.mod_floor(&d))
            }
            Expr::Pow(a, b) => {
                let base = a.eval(bindings)?;
                let exp = b.eval(bindings)?;
                let exp = exp
                    .to_u32()
                    .ok_or_else(|| Error::SieveData(format!("exponent {exp} out of range")))?;
                Ok(base.pow(exp))
            }
            Expr::Gcd(a, b) => Ok(a.eval(bindings)?.gcd(&b.eval(bindings)?)),
        }
    }

    /// Adds every symbol mentioned in the expression to `out`.
    pub fn symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Sym(s) => {
                out.insert(s.clone());
            }
            Expr::Neg(e) => e.symbols(out),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Rem(a, b)
            | Expr::Pow(a, b)
            | Expr::Gcd(a, b) => {
                a.symbols(out);
                b.symbols(out);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Conditions
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CmpOp {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

#[derive(Clone, Debug)]
enum Clause {
    Cmp(Expr, CmpOp, Expr),
    Odd(Expr),
    Even(Expr),
}

impl Clause {
    fn parse(text: &str) -> Result<Clause> {
        let t = text.trim();
        for (prefix, parity_odd) in [("odd(", true), ("even(", false)] {
            if let Some(rest) = t.strip_prefix(prefix) {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::SieveData(format!("unclosed parity clause {t:?}")))?;
                let e = Expr::parse(inner)?;
                return Ok(if parity_odd { Clause::Odd(e) } else { Clause::Even(e) });
            }
        }
        for (op_text, op) in [
            ("<=", CmpOp::Le),
            (">=", CmpOp::Ge),
            ("!=", CmpOp::Ne),
            ("<", CmpOp::Lt),
            (">", CmpOp::Gt),
            ("=", CmpOp::Eq),
        ] {
            if let Some(ix) = t.find(op_text) {
                let lhs = Expr::parse(&t[..ix])?;
                let rhs = Expr::parse(&t[ix + op_text.len()..])?;
                return Ok(Clause::Cmp(lhs, op, rhs));
            }
        }
        Err(Error::SieveData(format!("no comparison operator in clause {t:?}")))
    }

    fn holds(&self, bindings: &Bindings) -> Result<bool> {
        match self {
            Clause::Cmp(a, op, b) => {
                let x = a.eval(bindings)?;
                let y = b.eval(bindings)?;
                Ok(match op {
                    CmpOp::Lt => x < y,
                    CmpOp::Le => x <= y,
                    CmpOp::Eq => x == y,
                    CmpOp::Ne => x != y,
                    CmpOp::Ge => x >= y,
                    CmpOp::Gt => x > y,
                })
            }
            Clause::Odd(e) => Ok(e.eval(bindings)?.is_odd()),
            Clause::Even(e) => Ok(e.eval(bindings)?.is_even()),
        }
    }

    fn symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Clause::Cmp(a, _, b) => {
                a.symbols(out);
                b.symbols(out);
            }
            Clause::Odd(e) | Clause::Even(e) => e.symbols(out),
        }
    }
}

/// One entry of a rule's when-list.  The text is a disjunction of
/// conjunctions: alternatives split on ` or `, conjuncts on ` and `, each
/// conjunct a comparison (`< <= = != >= >`) or a parity test
/// `odd(expr)` / `even(expr)`.
#[derive(Clone, Debug)]
pub struct ConditionEntry {
    raw: String,
    alternatives: Vec<Vec<Clause>>,
}

impl ConditionEntry {
    /// Parses one when-list entry.
    pub fn parse(text: &str) -> Result<ConditionEntry> {
        let mut alternatives = Vec::new();
        for alt in text.split(" or ") {
            let mut clauses = Vec::new();
            for part in alt.split(" and ") {
                clauses.push(Clause::parse(part)?);
            }
            alternatives.push(clauses);
        }
        Ok(ConditionEntry {
            raw: text.to_string(),
            alternatives,
        })
    }

    /// The original text of the entry.
    pub fn raw(&self) -> &str {
        &self.raw
    }

    /// True when some alternative's conjuncts all hold.
    pub fn holds(&self, bindings: &Bindings) -> Result<bool> {
        for alt in &self.alternatives {
            let mut all = true;
            for clause in alt {
                if !clause.holds(bindings)? {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn symbols(&self, out: &mut BTreeSet<String>) {
        for alt in &self.alternatives {
            for clause in alt {
                clause.symbols(out);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Elementary number theory helpers
// ---------------------------------------------------------------------------

/// The p-part of n: the largest power of the prime p dividing n.
/// `p_part(48, 2) = 16`, `p_part(49, 7) = 49`, `p_part(60, 7) = 1`.
pub fn p_part(n: &BigUint, p: u64) -> BigUint {
    assert!(p >= 2, "p_part needs p >= 2");
    assert!(!n.is_zero(), "p_part needs a positive integer");
    let p = BigUint::from(p);
    let mut rest = n.clone();
    let mut part = BigUint::one();
    while (&rest % &p).is_zero() {
        rest /= &p;
        part *= &p;
    }
    part
}

/// The part of n coprime to p, so that `p_part(n, p) * p_prime_part(n, p) = n`.
pub fn p_prime_part(n: &BigUint, p: u64) -> BigUint {
    n / p_part(n, p)
}

/// Decomposes a prime power: `prime_power(49) = Some((7, 2))`,
/// `prime_power(12) = None`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 0;
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some((n, 1));
    }
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    if m == 1 {
        Some((p, e))
    } else {
        None
    }
}

fn divisors_u128(n: u128) -> Vec<u128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

// ---------------------------------------------------------------------------
// Order inequalities
// ---------------------------------------------------------------------------

/// True when a group of order `order_g` can act primitively with a point
/// stabilizer of order `order_h` and a nontrivial coprime design on the
/// cosets: the order must not exceed the cube of the stabilizer order.
pub fn order_cube_bound(order_g: &BigUint, order_h: &BigUint) -> bool {
    *order_g <= order_h.pow(3)
}

/// The sharpened cube bound for almost simple groups with socle X and a
/// point stabilizer meeting X in H0: |X| must be strictly less than
/// |Out|_p' ^2 * |H0| * |H0|_p' ^2, where p is the defining characteristic
/// and the p' subscript is the part coprime to p.
pub fn coprime_part_bound(
    order_x: &BigUint,
    order_h0: &BigUint,
    out_order: &BigUint,
    p: u64,
) -> bool {
    let out_pp = p_prime_part(out_order, p);
    let h0_pp = p_prime_part(order_h0, p);
    *order_x < &out_pp * &out_pp * order_h0 * &h0_pp * &h0_pp
}

/// The hypothesis of the coprime reduction step: the p-part of the
/// stabilizer's intersection with the socle stays below the outer
/// automorphism order.
pub fn p_part_below_out(order_h0: &BigUint, out_order: &BigUint, p: u64) -> bool {
    p_part(order_h0, p) < *out_order
}

// ---------------------------------------------------------------------------
// Parameter scan
// ---------------------------------------------------------------------------

/// One candidate parameter tuple emitted by the scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ParamSet {
    pub v: u128,
    pub b: u128,
    pub r: u128,
    pub k: u128,
    pub lambda: u128,
}

/// Enumerates every nontrivial 2-design parameter tuple (v, b, r, k, lambda)
/// consistent with the point count `v` and the divisor data:
///
/// * with `require_coprime_rv` set, r runs over the divisors of
///   gcd(v - 1, gcd of targets) and gcd(r, lambda) = 1 is required;
/// * without it, r runs over the divisors of the gcd of the targets alone
///   and no coprimality is imposed;
/// * lambda runs from 1 to min(r - 1, `lambda_max`);
/// * k = 1 + lambda (v - 1) / r must be integral with 2 < k < v - 1 and
///   k <= r (k = r, the symmetric case, is admitted);
/// * b = v r / k must be integral and lambda v < r^2 must hold.
///
/// Results are ordered by descending r, then ascending lambda.  Point
/// counts up to 2^63 are supported.
pub fn feasible_params(
    v: u128,
    targets: &[u128],
    lambda_max: Option<u128>,
    require_coprime_rv: bool,
) -> Vec<ParamSet> {
    assert!(v <= 1 << 63, "point counts above 2^63 are not supported");
    assert!(
        targets.iter().all(|&t| t >= 1 && t <= 1 << 63),
        "divisor targets must lie in 1..=2^63"
    );
    if v < 5 {
        // 2 < k < v - 1 is unsatisfiable below five points.
        return Vec::new();
    }
    let g0 = targets.iter().fold(0u128, |acc, &t| acc.gcd(&t));
    let base = if require_coprime_rv { (v - 1).gcd(&g0) } else { g0 };
    if base == 0 {
        return Vec::new();
    }
    let mut divs = divisors_u128(base);
    divs.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    for r in divs {
        if r < 2 {
            continue;
        }
        let lam_hi = lambda_max.map_or(r - 1, |m| m.min(r - 1));
        for lambda in 1..=lam_hi {
            let num = lambda * (v - 1);
            if num % r != 0 {
                continue;
            }
            let k = 1 + num / r;
            if k <= 2 || k >= v - 1 || k > r {
                continue;
            }
            if (v * r) % k != 0 {
                continue;
            }
            if lambda * v >= r * r {
                continue;
            }
            if require_coprime_rv && r.gcd(&lambda) != 1 {
                continue;
            }
            out.push(ParamSet {
                v,
                b: v * r / k,
                r,
                k,
                lambda,
            });
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Subdegree catalog
// ---------------------------------------------------------------------------

/// One row of the subdegree-divisor catalog: whenever the when-clauses
/// hold, the action named by (socle, stabilizer) has a suborbit whose
/// length divides the divisor expression.
#[derive(Clone, Debug)]
pub struct SubdegreeRule {
    pub id: String,
    pub class: String,
    pub socle: String,
    pub stabilizer: String,
    pub divisor: Expr,
    pub divisor_text: String,
    pub when: Vec<ConditionEntry>,
    pub samples: Vec<Bindings>,
    pub note: Option<String>,
}

#[derive(Deserialize)]
struct RawRuleFile {
    #[allow(dead_code)]
    about: String,
    rules: Vec<RawRule>,
}

#[derive(Deserialize)]
struct RawRule {
    id: String,
    class: String,
    socle: String,
    stab: String,
    d: String,
    when: Vec<String>,
    #[serde(default)]
    sample: Vec<BTreeMap<String, i64>>,
    #[serde(default)]
    note: Option<String>,
}

static SUBDEGREE_JSON: &str = include_str!("../data/subdegree_divisors.json");

/// Loads the shipped subdegree-divisor catalog.
pub fn subdegree_rules() -> Result<Vec<SubdegreeRule>> {
    let raw: RawRuleFile = serde_json::from_str(SUBDEGREE_JSON)
        .map_err(|e| Error::SieveData(format!("subdegree catalog: {e}")))?;
    let mut rules = Vec::with_capacity(raw.rules.len());
    for r in raw.rules {
        let divisor = Expr::parse(&r.d)?;
        let mut when = Vec::with_capacity(r.when.len());
        for w in &r.when {
            when.push(ConditionEntry::parse(w)?);
        }
        let samples = r
            .sample
            .iter()
            .map(|m| {
                m.iter()
                    .map(|(k, &v)| (k.clone(), BigInt::from(v)))
                    .collect()
            })
            .collect();
        rules.push(SubdegreeRule {
            id: r.id,
            class: r.class,
            socle: r.socle,
            stabilizer: r.stab,
            divisor,
            divisor_text: r.d,
            when,
            samples,
            note: r.note,
        });
    }
    Ok(rules)
}

/// Looks up a catalog row by id.
pub fn subdegree_rule(id: &str) -> Result<SubdegreeRule> {
    subdegree_rules()?
        .into_iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::SieveData(format!("no subdegree rule named {id:?}")))
}

fn check_standard_symbols(bindings: &Bindings) -> Result<()> {
    for s in ["eps", "delta", "epsp"] {
        if let Some(v) = bindings.get(s) {
            if v.magnitude() != &BigUint::one() {
                return Err(Error::SieveData(format!("{s} must be +1 or -1, got {v}")));
            }
        }
    }
    if let (Some(qv), Some(av)) = (bindings.get("q"), bindings.get("a")) {
        if let (Some(q), Some(a)) = (qv.to_u64(), av.to_u32()) {
            match prime_power(q) {
                Some((_, e)) if e == a => {}
                Some((p, e)) => {
                    return Err(Error::SieveData(format!(
                        "q = {q} is {p}^{e}, but a = {a} was bound"
                    )))
                }
                None => {
                    return Err(Error::SieveData(format!("q = {q} is not a prime power")));
                }
            }
        }
    }
    if let (Some(av), Some(a2v)) = (bindings.get("a"), bindings.get("a2p")) {
        if let (Some(a), Some(a2p)) = (av.to_u64(), a2v.to_u64()) {
            let mut odd = a;
            while odd % 2 == 0 {
                odd /= 2;
            }
            if odd != a2p {
                return Err(Error::SieveData(format!(
                    "a2p must be the odd part of a: a = {a} gives {odd}, got {a2p}"
                )));
            }
        }
    }
    Ok(())
}

/// Evaluates a rule's divisor at the given bindings.  Every symbol used by
/// the rule must be bound, the sign symbols must be +1 or -1, bound field
/// data must be consistent (q = p^a, a2p the odd part of a), and every
/// when-clause must hold; the result is then a positive integer.
pub fn subdegree_value(rule: &SubdegreeRule, bindings: &Bindings) -> Result<BigUint> {
    let mut syms = BTreeSet::new();
    rule.divisor.symbols(&mut syms);
    for entry in &rule.when {
        entry.symbols(&mut syms);
    }
    for s in &syms {
        if !bindings.contains_key(s) {
            return Err(Error::SieveData(format!(
                "rule {}: symbol {s:?} is not bound",
                rule.id
            )));
        }
    }
    check_standard_symbols(bindings)?;
    for entry in &rule.when {
        if !entry.holds(bindings)? {
            return Err(Error::SieveData(format!(
                "rule {}: condition {:?} fails at the given bindings",
                rule.id,
                entry.raw()
            )));
        }
    }
    let val = rule.divisor.eval(bindings)?;
    if !val.is_positive() {
        return Err(Error::SieveData(format!(
            "rule {}: divisor evaluated to {val}, expected positive",
            rule.id
        )));
    }
    Ok(val.to_biguint().expect("positive"))
}

// ---------------------------------------------------------------------------
// Case elimination
// ---------------------------------------------------------------------------

fn ser_biguint<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// One candidate action to be screened: a lower bound on the point count
/// (exact where `v` is set), an upper bound on the replication number,
/// and the divisor targets used if an exhaustive scan is needed.
#[derive(Clone, Debug, Serialize)]
pub struct SieveCase {
    pub description: String,
    pub v: Option<u128>,
    #[serde(serialize_with = "ser_biguint")]
    pub l_v: BigUint,
    #[serde(serialize_with = "ser_biguint")]
    pub u_r: BigUint,
    pub lambda_min: u64,
    pub lambda_max: Option<u128>,
    pub r_divisor_targets: Vec<u128>,
}

impl SieveCase {
    /// A case known only through bounds; no exhaustive scan is possible.
    pub fn bounded(description: impl Into<String>, l_v: BigUint, u_r: BigUint) -> SieveCase {
        SieveCase {
            description: description.into(),
            v: None,
            l_v,
            u_r,
            lambda_min: 2,
            lambda_max: None,
            r_divisor_targets: Vec::new(),
        }
    }

    /// A case with an exact point count; the replication number must
    /// divide `u_r`.
    pub fn exact(description: impl Into<String>, v: u128, u_r: u128) -> SieveCase {
        SieveCase {
            description: description.into(),
            v: Some(v),
            l_v: BigUint::from(v),
            u_r: BigUint::from(u_r),
            lambda_min: 2,
            lambda_max: None,
            r_divisor_targets: vec![u_r],
        }
    }

    /// Overrides the default lambda floor of 2.
    pub fn with_lambda_min(mut self, lambda_min: u64) -> SieveCase {
        self.lambda_min = lambda_min;
        self
    }

    /// Caps lambda in the exhaustive scan.
    pub fn with_lambda_max(mut self, lambda_max: u128) -> SieveCase {
        self.lambda_max = Some(lambda_max);
        self
    }
}

/// Outcome of screening one case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Eliminated,
    Survivors,
}

/// The full screening record for one case: the verdict, any parameter
/// tuples that survived, and a human-readable reason chain.
#[derive(Clone, Debug, Serialize)]
pub struct EliminationReport {
    pub case: SieveCase,
    pub verdict: Verdict,
    pub surviving: Vec<ParamSet>,
    pub reasons: Vec<String>,
}

/// Screens one case.  The coarse test retires it outright when
/// `lambda_min * l_v > u_r^2`, since every admissible tuple needs
/// lambda v < r^2.  Otherwise, with an exact point count available, an
/// exhaustive coprime scan over the divisor targets decides the case; with
/// bounds only, the case is reported as unresolved with an empty survivor
/// list and a reason explaining that no enumeration basis exists.
pub fn eliminate(case: &SieveCase) -> EliminationReport {
    let mut reasons = Vec::new();
    let lhs = BigUint::from(case.lambda_min) * &case.l_v;
    let rhs = &case.u_r * &case.u_r;
    if lhs > rhs {
        reasons.push(format!(
            "lambda_min * l_v = {lhs} exceeds u_r^2 = {rhs}, so lambda v < r^2 fails everywhere"
        ));
        return EliminationReport {
            case: case.clone(),
            verdict: Verdict::Eliminated,
            surviving: Vec::new(),
            reasons,
        };
    }
    reasons.push(format!(
        "coarse test inconclusive: lambda_min * l_v = {lhs} within u_r^2 = {rhs}"
    ));
    match case.v {
        Some(v) => {
            let surviving: Vec<ParamSet> =
                feasible_params(v, &case.r_divisor_targets, case.lambda_max, true)
                    .into_iter()
                    .filter(|p| p.lambda >= u128::from(case.lambda_min))
                    .collect();
            if surviving.is_empty() {
                reasons.push(format!(
                    "exhaustive scan at v = {v} over divisors of {:?} found no admissible tuple",
                    case.r_divisor_targets
                ));
                EliminationReport {
                    case: case.clone(),
                    verdict: Verdict::Eliminated,
                    surviving,
                    reasons,
                }
            } else {
                reasons.push(format!(
                    "exhaustive scan at v = {v} found {} admissible tuple(s)",
                    surviving.len()
                ));
                EliminationReport {
                    case: case.clone(),
                    verdict: Verdict::Survivors,
                    surviving,
                    reasons,
                }
            }
        }
        None => {
            reasons.push(
                "no exact point count is recorded, so the divisor bound alone cannot finish \
                 this case"
                    .into(),
            );
            EliminationReport {
                case: case.clone(),
                verdict: Verdict::Survivors,
                surviving: Vec::new(),
                reasons,
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Case catalogs
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct RawCaseFile {
    #[allow(dead_code)]
    about: String,
    rows: Vec<RawCaseRow>,
}

#[derive(Deserialize)]
struct RawCaseRow {
    id: String,
    class: String,
    socle: String,
    stab: String,
    #[serde(default)]
    v: Option<String>,
    #[serde(default)]
    lv: Option<String>,
    #[serde(default)]
    ur: Option<String>,
    #[serde(default)]
    required_r_divisor: Option<String>,
    #[serde(default)]
    q: Option<Vec<u64>>,
    #[serde(default)]
    when: Option<Vec<String>>,
    #[serde(default)]
    lambda_min: Option<u64>,
    #[serde(default)]
    note: Option<String>,
    #[serde(default)]
    i: Option<u32>,
    #[serde(default)]
    n: Option<u32>,
}

/// Standard bindings for a sample field size: q itself, its characteristic
/// p, the field-automorphism degree a with q = p^a, and the odd part a2p.
pub fn field_bindings(q: u64) -> Result<Bindings> {
    let (p, a) = prime_power(q)
        .ok_or_else(|| Error::SieveData(format!("field size {q} is not a prime power")))?;
    let mut a2p = a;
    while a2p % 2 == 0 {
        a2p /= 2;
    }
    Ok(bind(&[
        ("q", q as i64),
        ("p", p as i64),
        ("a", a as i64),
        ("a2p", a2p as i64),
    ]))
}

fn expand_case_file(src: &str, file: &str) -> Result<Vec<SieveCase>> {
    let raw: RawCaseFile =
        serde_json::from_str(src).map_err(|e| Error::SieveData(format!("{file}: {e}")))?;
    let mut out = Vec::new();
    for row in &raw.rows {
        let _ = (&row.note, row.i, row.n);
        let instances: Vec<Option<u64>> = match &row.q {
            Some(list) => list.iter().map(|&q| Some(q)).collect(),
            None => vec![None],
        };
        for qopt in instances {
            let bindings = match qopt {
                Some(q) => field_bindings(q)?,
                None => Bindings::new(),
            };
            if let Some(when) = &row.when {
                for w in when {
                    let entry = ConditionEntry::parse(w)?;
                    if !entry.holds(&bindings)? {
                        return Err(Error::SieveData(format!(
                            "{file}: row {} violates its condition {w:?} at q = {qopt:?}",
                            row.id
                        )));
                    }
                }
            }
            let eval_pos = |text: &str| -> Result<BigUint> {
                let val = Expr::parse(text)?.eval(&bindings)?;
                if !val.is_positive() {
                    return Err(Error::SieveData(format!(
                        "{file}: row {} expression {text:?} evaluated to {val}",
                        row.id
                    )));
                }
                Ok(val.to_biguint().expect("positive"))
            };
            let (l_v, v_exact) = if let Some(vx) = &row.v {
                let big = eval_pos(vx)?;
                let exact = big.to_u128().filter(|&x| x <= 1 << 63);
                (big, exact)
            } else if let Some(lv) = &row.lv {
                (eval_pos(lv)?, None)
            } else {
                return Err(Error::SieveData(format!(
                    "{file}: row {} needs either v or lv",
                    row.id
                )));
            };
            let u_r = if let Some(ur) = &row.ur {
                eval_pos(ur)?
            } else if let Some(d) = &row.required_r_divisor {
                // The replication number must be a multiple of d dividing
                // v - 1.  The largest such multiple is v - 1 itself when d
                // divides it; otherwise no admissible value exists and the
                // vacuous bound 1 retires the case.
                let dv = eval_pos(d)?;
                let vm1 = &l_v - 1u32;
                if (&vm1 % &dv).is_zero() {
                    vm1
                } else {
                    BigUint::one()
                }
            } else {
                return Err(Error::SieveData(format!(
                    "{file}: row {} needs either ur or required_r_divisor",
                    row.id
                )));
            };
            let targets = match (v_exact, u_r.to_u128()) {
                (Some(_), Some(t)) if t >= 1 && t <= 1 << 63 => vec![t],
                _ => Vec::new(),
            };
            let description = match qopt {
                Some(q) => format!("[{}] {} / {} at q = {q}", row.class, row.socle, row.stab),
                None => format!("[{}] {} / {}", row.class, row.socle, row.stab),
            };
            out.push(SieveCase {
                description,
                v: if targets.is_empty() { None } else { v_exact },
                l_v,
                u_r,
                lambda_min: row.lambda_min.unwrap_or(2),
                lambda_max: None,
                r_divisor_targets: targets,
            });
        }
    }
    Ok(out)
}

/// Subspace-stabilizer actions of linear groups that survive the coarse
/// dimension screen.
pub fn linear_subspace_cases() -> Result<Vec<SieveCase>> {
    expand_case_file(
        include_str!("../data/cases_linear_subspace.json"),
        "cases_linear_subspace",
    )
}

/// Extraspecial-normalizer and almost-simple actions of small linear groups.
pub fn linear_small_cases() -> Result<Vec<SieveCase>> {
    expand_case_file(
        include_str!("../data/cases_linear_small.json"),
        "cases_linear_small",
    )
}

/// Extraspecial-normalizer and almost-simple actions of symplectic groups.
pub fn symplectic_small_cases() -> Result<Vec<SieveCase>> {
    expand_case_file(
        include_str!("../data/cases_symplectic_small.json"),
        "cases_symplectic_small",
    )
}

/// Imprimitive-decomposition, almost-simple, and subfield actions of
/// orthogonal groups.
pub fn orthogonal_small_cases() -> Result<Vec<SieveCase>> {
    expand_case_file(
        include_str!("../data/cases_orthogonal_small.json"),
        "cases_orthogonal_small",
    )
}

/// Every shipped case catalog, keyed by a short name.
pub fn all_case_files() -> Result<Vec<(&'static str, Vec<SieveCase>)>> {
    Ok(vec![
        ("linear_subspace", linear_subspace_cases()?),
        ("linear_small", linear_small_cases()?),
        ("symplectic_small", symplectic_small_cases()?),
        ("orthogonal_small", orthogonal_small_cases()?),
    ])
}

// ---------------------------------------------------------------------------
// Parabolic indices and product margins
// ---------------------------------------------------------------------------

/// Which classical family a parabolic index is taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParabolicFamily {
    Linear,
    Symplectic,
}

/// The index of the i-th maximal parabolic subgroup: for the linear family
/// the Gaussian binomial (number of i-subspaces of an n-space over GF(q)),
/// for the symplectic family the number of totally isotropic i-subspaces,
/// `prod_{j=0}^{i-1} (q^(n-2j) - 1) / prod_{j=1}^{i} (q^j - 1)` with n even.
pub fn parabolic_index(family: ParabolicFamily, n: u32, q: u64, i: u32) -> Result<BigUint> {
    if q < 2 {
        return Err(Error::SieveData(format!("field size {q} must be at least 2")));
    }
    match family {
        ParabolicFamily::Linear => {
            if i < 1 || i >= n {
                return Err(Error::SieveData(format!(
                    "linear parabolic needs 1 <= i <= n - 1, got i = {i}, n = {n}"
                )));
            }
            Ok(gauss_binom(n, i, q))
        }
        ParabolicFamily::Symplectic => {
            if n < 2 || n % 2 != 0 {
                return Err(Error::SieveData(format!(
                    "symplectic parabolic needs even n >= 2, got n = {n}"
                )));
            }
            if i < 1 || i > n / 2 {
                return Err(Error::SieveData(format!(
                    "symplectic parabolic needs 1 <= i <= n/2, got i = {i}, n = {n}"
                )));
            }
            let q = BigUint::from(q);
            let mut num = BigUint::one();
            for j in 0..i {
                num *= q.pow(n - 2 * j) - 1u32;
            }
            let mut den = BigUint::one();
            for j in 1..=i {
                den *= q.pow(j) - 1u32;
            }
            let (quo, rem) = num.div_rem(&den);
            debug_assert!(rem.is_zero(), "isotropic subspace count is integral");
            Ok(quo)
        }
    }
}

/// The two strict product inequalities used to cap stabilizer orders.
/// `full` compares `prod_{i=1}^{n} (q^(2i) - 1)` with `q^(n(n+1))`; `tail`
/// (present for n >= 2) compares `prod_{i=2}^{n} (q^i - 1)` with
/// `q^((n^2+n-2)/2)`.
#[derive(Clone, Debug)]
pub struct ProductMargins {
    pub full: (BigUint, BigUint),
    pub tail: Option<(BigUint, BigUint)>,
}

impl ProductMargins {
    /// True when every recorded product is strictly below its bound.
    pub fn holds(&self) -> bool {
        self.full.0 < self.full.1
            && self.tail.as_ref().map_or(true, |(lhs, rhs)| lhs < rhs)
    }
}

/// Computes both product margins at (n, q); n >= 1, q >= 2.
pub fn product_bound_margins(n: u32, q: u64) -> ProductMargins {
    assert!(n >= 1, "need n >= 1");
    assert!(q >= 2, "need q >= 2");
    let q = BigUint::from(q);
    let mut full = BigUint::one();
    for i in 1..=n {
        full *= q.pow(2 * i) - 1u32;
    }
    let full_bound = q.pow(n * (n + 1));
    let tail = if n >= 2 {
        let mut prod = BigUint::one();
        for i in 2..=n {
            prod *= q.pow(i) - 1u32;
        }
        Some((prod, q.pow((n * n + n - 2) / 2)))
    } else {
        None
    };
    ProductMargins {
        full: (full, full_bound),
        tail,
    }
}

// ---------------------------------------------------------------------------
// The rank-2 symplectic imprimitive scan
// ---------------------------------------------------------------------------

/// Replays the parameter scan for the imprimitive pair-stabilizer action
/// of the rank-2 symplectic group at field size q: the action has
/// v = q^2 (q^2 + 1) / 2 points and divisor analysis locks the replication
/// number to exactly 3 (q^2 - 1).  Returns every admissible tuple with
/// lambda >= 2 at that replication number (designs with lambda = 1 are
/// linear spaces, covered by a separate classification), without the
/// gcd(r, lambda) = 1 filter, so callers can apply and report the coprime
/// filter themselves.
pub fn symplectic_imprimitive_scan(q: u64) -> Vec<ParamSet> {
    assert!(q >= 3, "the action needs q >= 3");
    let q = q as u128;
    let v = q * q * (q * q + 1) / 2;
    let target = 3 * (q * q - 1);
    feasible_params(v, &[target], None, false)
        .into_iter()
        .filter(|p| p.r == target && p.lambda >= 2)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn expression_parsing_and_eval() {
        let e = Expr::parse("q*(q^i-1)*(q^(n-i)-1)/(q-1)^2").unwrap();
        let v = e.eval(&bind(&[("q", 3), ("i", 2), ("n", 4)])).unwrap();
        assert_eq!(v, BigInt::from(48));

        let sign = Expr::parse("(q0^n-(-1)^n)*(q0^(n-1)-(-1)^(n-1))").unwrap();
        let v = sign.eval(&bind(&[("q0", 2), ("n", 4)])).unwrap();
        assert_eq!(v, BigInt::from(135));

        let g = Expr::parse("gcd(4, q^m-1)").unwrap();
        assert_eq!(g.eval(&bind(&[("q", 4), ("m", 4)])).unwrap(), BigInt::from(1));
        assert_eq!(g.eval(&bind(&[("q", 3), ("m", 2)])).unwrap(), BigInt::from(4));
    }

    #[test]
    fn expression_errors() {
        assert!(Expr::parse("q +* 2").is_err());
        assert!(Expr::parse("q)").is_err());
        assert!(Expr::parse("foo(1, 2)").is_err());
        let e = Expr::parse("q/(q-1)").unwrap();
        assert!(e.eval(&bind(&[("q", 3)])).is_err(), "inexact division");
        let e = Expr::parse("q+n").unwrap();
        assert!(e.eval(&bind(&[("q", 3)])).is_err(), "unbound symbol");
    }

    #[test]
    fn condition_entries() {
        let c = ConditionEntry::parse("m = 4 and c = 6 or c = 2").unwrap();
        assert!(c.holds(&bind(&[("m", 4), ("c", 6)])).unwrap());
        assert!(c.holds(&bind(&[("m", 7), ("c", 2)])).unwrap());
        assert!(!c.holds(&bind(&[("m", 5), ("c", 6)])).unwrap());

        let parity = ConditionEntry::parse("even(q)").unwrap();
        assert!(parity.holds(&bind(&[("q", 4)])).unwrap());
        assert!(!parity.holds(&bind(&[("q", 5)])).unwrap());

        let modular = ConditionEntry::parse("q % 4 = 3").unwrap();
        assert!(modular.holds(&bind(&[("q", 7)])).unwrap());
        assert!(!modular.holds(&bind(&[("q", 5)])).unwrap());
    }

    #[test]
    fn p_part_values() {
        assert_eq!(p_part(&big(48), 2), big(16));
        assert_eq!(p_part(&big(49), 7), big(49));
        assert_eq!(p_part(&big(60), 7), big(1));
        assert_eq!(p_prime_part(&big(48), 2), big(3));
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn order_cube_bound_examples() {
        assert!(order_cube_bound(&big(60), &big(10)));
        assert!(order_cube_bound(&big(1000), &big(10)), "boundary included");
        assert!(!order_cube_bound(&big(1001), &big(10)));
    }

    #[test]
    fn coprime_part_bound_examples() {
        // 504 < 3^2 * 18 * 9^2 = 13122.
        assert!(coprime_part_bound(&big(504), &big(18), &big(3), 2));
        // Strictness at the boundary.
        assert!(!coprime_part_bound(&big(13122), &big(18), &big(3), 2));
        // A 2-group stabilizer contributes no odd part: bound is 9 * 16.
        assert!(coprime_part_bound(&big(100), &big(16), &big(3), 2));
        assert!(!coprime_part_bound(&big(144), &big(16), &big(3), 2));
    }

    #[test]
    fn p_part_below_out_examples() {
        assert!(p_part_below_out(&big(18), &big(3), 2));
        assert!(!p_part_below_out(&big(16), &big(3), 2));
    }

    #[test]
    fn feasible_params_small_two_transitive() {
        // v = 7, r | gcd(6, 6): only the classical point-line parameters.
        let rows = feasible_params(7, &[6], None, true);
        assert_eq!(
            rows,
            vec![ParamSet { v: 7, b: 7, r: 3, k: 3, lambda: 1 }]
        );
    }

    #[test]
    fn feasible_params_coprime_gate() {
        // Without the coprimality requirement the full-divisor tuple and the
        // half-divisor symmetric tuple both appear.
        let open = feasible_params(45, &[24], Some(17), false);
        assert!(open.contains(&ParamSet { v: 45, b: 90, r: 24, k: 12, lambda: 6 }));
        assert!(open.contains(&ParamSet { v: 45, b: 45, r: 12, k: 12, lambda: 3 }));
        // With it, r must divide gcd(44, 24) = 4, and nothing survives
        // lambda v < r^2.
        assert!(feasible_params(45, &[24], Some(17), true).is_empty());
    }

    #[test]
    fn feasible_params_large_example() {
        let rows = feasible_params(2080, &[189], None, true);
        assert!(rows.contains(&ParamSet { v: 2080, b: 8736, r: 189, k: 45, lambda: 4 }));
        for p in &rows {
            assert_eq!(p.r * (p.k - 1), p.lambda * (p.v - 1));
            assert_eq!(p.b * p.k, p.v * p.r);
            assert!(p.lambda * p.v < p.r * p.r);
            assert!(p.k <= p.r && 2 < p.k && p.k < p.v - 1);
            assert_eq!(p.r.gcd(&p.lambda), 1);
        }
    }

    #[test]
    fn feasible_params_ordering() {
        let rows = feasible_params(2080, &[189], None, false);
        let keys: Vec<(u128, u128)> = rows.iter().map(|p| (p.r, p.lambda)).collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        assert_eq!(keys, sorted);
    }

    /// Direct re-derivation of the scan from the definition, with r running
    /// over every integer rather than a divisor enumeration.
    fn brute_force_params(
        v: u128,
        targets: &[u128],
        lambda_max: Option<u128>,
        require_coprime_rv: bool,
    ) -> Vec<ParamSet> {
        let mut out = Vec::new();
        let mut rs: Vec<u128> = (2..=v * 2)
            .filter(|&r| {
                targets.iter().all(|&t| t % r == 0)
                    && (!require_coprime_rv || (v - 1) % r == 0)
            })
            .collect();
        rs.sort_unstable_by(|a, b| b.cmp(a));
        for r in rs {
            for lambda in 1..=lambda_max.map_or(r - 1, |m| m.min(r - 1)) {
                if lambda * (v - 1) % r != 0 {
                    continue;
                }
                let k = 1 + lambda * (v - 1) / r;
                if k <= 2 || k >= v - 1 || k > r || (v * r) % k != 0 || lambda * v >= r * r {
                    continue;
                }
                if require_coprime_rv && r.gcd(&lambda) != 1 {
                    continue;
                }
                out.push(ParamSet { v, b: v * r / k, r, k, lambda });
            }
        }
        out
    }

    #[test]
    fn feasible_params_matches_brute_force() {
        for &(v, t, coprime) in &[
            (45u128, 24u128, false),
            (45, 24, true),
            (136, 45, false),
            (325, 72, false),
            (2080, 189, false),
            (2080, 189, true),
            (729, 104, true),
            (496, 495, true),
        ] {
            assert_eq!(
                feasible_params(v, &[t], Some(30), coprime),
                brute_force_params(v, &[t], Some(30), coprime),
                "v = {v}, target = {t}, coprime = {coprime}"
            );
        }
    }

    #[test]
    fn subdegree_catalog_loads() {
        let rules = subdegree_rules().unwrap();
        assert_eq!(rules.len(), 47);
        let ids: BTreeSet<&str> = rules.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids.len(), rules.len(), "ids are unique");
    }

    #[test]
    fn subdegree_samples_all_positive() {
        for rule in subdegree_rules().unwrap() {
            assert!(
                !rule.samples.is_empty(),
                "rule {} ships no sample binding",
                rule.id
            );
            for sample in &rule.samples {
                let val = subdegree_value(&rule, sample).unwrap_or_else(|e| {
                    panic!("rule {} fails on its sample: {e}", rule.id)
                });
                assert!(val >= BigUint::one());
            }
        }
    }

    #[test]
    fn subdegree_known_values() {
        let rule = subdegree_rule("psl-pi").unwrap();
        let v = subdegree_value(&rule, &bind(&[("q", 3), ("i", 2), ("n", 4)])).unwrap();
        assert_eq!(v, big(48));

        let rule = subdegree_rule("psp-c8-1").unwrap();
        let v = subdegree_value(&rule, &bind(&[("q", 2), ("m", 3), ("eps", 1)])).unwrap();
        assert_eq!(v, big(35));
    }

    #[test]
    fn subdegree_point_action_is_v_minus_1() {
        let rule = subdegree_rule("psl-p1").unwrap();
        for &(n, q) in &[(3u32, 3u64), (4, 2), (5, 4), (3, 8)] {
            let d = subdegree_value(&rule, &bind(&[("q", q as i64), ("n", n as i64)])).unwrap();
            let v = gauss_binom(n, 1, q);
            assert_eq!(d + 1u32, v, "n = {n}, q = {q}");
        }
    }

    #[test]
    fn subdegree_rejects_bad_bindings() {
        let rule = subdegree_rule("psp-c8-1").unwrap();
        // Odd q violates the parity condition.
        let err = subdegree_value(&rule, &bind(&[("q", 3), ("m", 3), ("eps", 1)]))
            .unwrap_err()
            .to_string();
        assert!(err.contains("even(q)"), "got {err}");
        // Signs must be +1 or -1.
        assert!(subdegree_value(&rule, &bind(&[("q", 2), ("m", 3), ("eps", 2)])).is_err());
        // Unbound symbol.
        assert!(subdegree_value(&rule, &bind(&[("q", 2), ("m", 3)])).is_err());
        // Inconsistent field degree.
        let rule = subdegree_rule("psp-c3").unwrap();
        let err = subdegree_value(
            &rule,
            &bind(&[("q", 4), ("a", 3), ("i", 1), ("t", 2), ("m", 2)]),
        )
        .unwrap_err()
        .to_string();
        assert!(err.contains("a = 3"), "got {err}");
    }

    #[test]
    fn eliminate_coarse_kill() {
        let case = SieveCase::bounded("toy", big(512), big(2));
        let report = eliminate(&case);
        assert_eq!(report.verdict, Verdict::Eliminated);
        assert!(report.surviving.is_empty());

        let case = SieveCase::bounded("toy large", BigUint::from(1u32) << 15, big(62));
        let report = eliminate(&case);
        assert_eq!(report.verdict, Verdict::Eliminated);
    }

    #[test]
    fn eliminate_survivor_paths() {
        // Exact point count: the scan finds the classical tuple.
        let case = SieveCase::exact("seven points", 7, 6).with_lambda_min(1);
        let report = eliminate(&case);
        assert_eq!(report.verdict, Verdict::Survivors);
        assert_eq!(
            report.surviving,
            vec![ParamSet { v: 7, b: 7, r: 3, k: 3, lambda: 1 }]
        );

        // Bounds only, coarse test inconclusive: unresolved, reasons say why.
        let case = SieveCase::bounded("degenerate", BigUint::one(), big(1_000_000));
        let report = eliminate(&case);
        assert_eq!(report.verdict, Verdict::Survivors);
        assert!(report.surviving.is_empty());
        assert!(report.reasons.iter().any(|r| r.contains("no exact point count")));
    }

    #[test]
    fn case_catalogs_expand() {
        assert_eq!(linear_subspace_cases().unwrap().len(), 14);
        assert_eq!(linear_small_cases().unwrap().len(), 4);
        assert_eq!(symplectic_small_cases().unwrap().len(), 27);
        assert_eq!(orthogonal_small_cases().unwrap().len(), 38);
    }

    #[test]
    fn every_catalog_case_is_eliminated() {
        for (name, cases) in all_case_files().unwrap() {
            for case in cases {
                let report = eliminate(&case);
                assert_eq!(
                    report.verdict,
                    Verdict::Eliminated,
                    "{name}: {} was not eliminated: {:?}",
                    case.description,
                    report.reasons
                );
                assert!(!report.reasons.is_empty());
            }
        }
    }

    #[test]
    fn required_divisor_rows_get_vacuous_bound() {
        let cases = symplectic_small_cases().unwrap();
        let sz: Vec<&SieveCase> = cases
            .iter()
            .filter(|c| c.description.contains("Sz(q)"))
            .collect();
        assert_eq!(sz.len(), 2);
        for c in sz {
            assert_eq!(c.u_r, BigUint::one(), "{}", c.description);
        }
    }

    #[test]
    fn parabolic_index_values() {
        assert_eq!(
            parabolic_index(ParabolicFamily::Linear, 3, 2, 1).unwrap(),
            big(7)
        );
        assert_eq!(
            parabolic_index(ParabolicFamily::Linear, 4, 2, 2).unwrap(),
            big(35)
        );
        assert_eq!(
            parabolic_index(ParabolicFamily::Symplectic, 4, 3, 1).unwrap(),
            big(40)
        );
        assert_eq!(
            parabolic_index(ParabolicFamily::Symplectic, 6, 2, 3).unwrap(),
            big(135)
        );
        assert!(parabolic_index(ParabolicFamily::Linear, 4, 2, 0).is_err());
        assert!(parabolic_index(ParabolicFamily::Linear, 4, 2, 4).is_err());
        assert!(parabolic_index(ParabolicFamily::Symplectic, 5, 2, 1).is_err());
        assert!(parabolic_index(ParabolicFamily::Symplectic, 6, 2, 4).is_err());
    }

    #[test]
    fn product_margin_values() {
        let m = product_bound_margins(2, 2);
        assert_eq!(m.full, (big(45), big(64)));
        assert!(m.holds());

        let m = product_bound_margins(1, 2);
        assert_eq!(m.full, (big(3), big(4)));
        assert!(m.tail.is_none());
        assert!(m.holds());

        let m = product_bound_margins(3, 3);
        assert_eq!(m.full.0, big(465_920));
        assert_eq!(m.full.1, big(531_441));
        assert_eq!(m.tail, Some((big(208), big(243))));
        assert!(m.holds());
    }

    #[test]
    fn product_margins_exhaustive() {
        for q in 2..=16u64 {
            for n in 1..=8u32 {
                assert!(
                    product_bound_margins(n, q).holds(),
                    "margin fails at n = {n}, q = {q}"
                );
            }
        }
    }

    #[test]
    fn symplectic_scan_known_tuples() {
        let known = [
            (3u64, vec![ParamSet { v: 45, b: 90, r: 24, k: 12, lambda: 6 }]),
            (
                4,
                vec![
                    ParamSet { v: 136, b: 612, r: 45, k: 10, lambda: 3 },
                    ParamSet { v: 136, b: 180, r: 45, k: 34, lambda: 11 },
                    ParamSet { v: 136, b: 153, r: 45, k: 40, lambda: 13 },
                ],
            ),
            (5, vec![ParamSet { v: 325, b: 2340, r: 72, k: 10, lambda: 2 }]),
            (
                7,
                vec![
                    ParamSet { v: 1225, b: 9800, r: 144, k: 18, lambda: 2 },
                    ParamSet { v: 1225, b: 5040, r: 144, k: 35, lambda: 4 },
                    ParamSet { v: 1225, b: 1470, r: 144, k: 120, lambda: 14 },
                ],
            ),
            (
                8,
                vec![
                    ParamSet { v: 2080, b: 8736, r: 189, k: 45, lambda: 4 },
                    ParamSet { v: 2080, b: 7020, r: 189, k: 56, lambda: 5 },
                    ParamSet { v: 2080, b: 5040, r: 189, k: 78, lambda: 7 },
                    ParamSet { v: 2080, b: 2730, r: 189, k: 144, lambda: 13 },
                ],
            ),
        ];
        for (q, expected) in known {
            assert_eq!(symplectic_imprimitive_scan(q), expected, "q = {q}");
        }
    }

    #[test]
    fn symplectic_scan_coprime_survivors() {
        let mut survivors = Vec::new();
        for q in [3u64, 4, 5, 7, 8] {
            for p in symplectic_imprimitive_scan(q) {
                if p.r.gcd(&p.lambda) == 1 {
                    survivors.push(p);
                }
            }
        }
        assert!(survivors.contains(&ParamSet { v: 2080, b: 8736, r: 189, k: 45, lambda: 4 }));
        assert_eq!(survivors.len(), 5);
    }

    #[test]
    fn report_serializes() {
        let case = SieveCase::exact("toy", 7, 6).with_lambda_min(1);
        let report = eliminate(&case);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"verdict\":\"survivors\""));
        assert!(json.contains("\"l_v\":\"7\""));
    }
}
