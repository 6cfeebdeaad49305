//! Arithmetic in small finite fields GF(p^a).
//!
//! Elements are indices into a fixed enumeration: element `i` has the
//! coefficient vector given by the base-p digits of `i`, least significant
//! digit first, so index 0 is zero, index 1 is one, and index p is the
//! residue of x modulo the field's defining polynomial.  The defining
//! polynomial is chosen deterministically: among all monic irreducible
//! polynomials of degree a over GF(p), the one whose non-leading coefficient
//! vector encodes the smallest integer in this same digit order.  Two calls
//! with the same (p, a) always produce identical fields, so element indices
//! are stable and can be stored or serialized freely.
//!
//! Fields up to 2^16 elements are supported.  Fields with at most 2048
//! elements precompute full addition/multiplication/inverse tables; larger
//! fields fall back to direct polynomial arithmetic per operation.

use crate::error::Error;

/// Largest field size for which full operation tables are precomputed.
const TABLE_LIMIT: u64 = 2048;

/// An element of a [`FiniteField`], identified by its enumeration index.
#[derive(Copy, Clone, Debug, Hash, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);
}

/// GF(p^a) with a deterministic defining polynomial.
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    a: u32,
    q: u32,
    /// Monic defining polynomial, low-degree coefficients first, length a+1.
    modulus: Vec<u16>,
    /// Flattened coefficient vectors: element i has digits coeffs[i*a .. i*a+a].
    coeffs: Vec<u16>,
    mul_tab: Option<Vec<u16>>,
    add_tab: Option<Vec<u16>>,
    inv_tab: Option<Vec<u16>>,
}

impl std::fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.q)?;
        if self.a > 1 {
            write!(f, " = GF({}^{}) mod {}", self.p, self.a, poly_string(&self.modulus))?;
        }
        Ok(())
    }
}

fn poly_string(poly: &[u16]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in poly.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match i {
            0 => format!("{c}"),
            1 if c == 1 => "x".to_string(),
            1 => format!("{c}*x"),
            _ if c == 1 => format!("x^{i}"),
            _ => format!("{c}*x^{i}"),
        };
        parts.push(term);
    }
    if parts.is_empty() {
        parts.push("0".to_string());
    }
    parts.join(" + ")
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes q as p^a with p prime, if possible.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&d| q % d == 0).unwrap();
    let mut rest = q;
    let mut a = 0;
    while rest % p == 0 {
        rest /= p;
        a += 1;
    }
    (rest == 1).then_some((p, a))
}

/// Remainder of polynomial division over GF(p); both inputs low-first.
fn poly_rem(mut num: Vec<u16>, den: &[u16], p: u32) -> Vec<u16> {
    let dd = den.len() - 1;
    debug_assert!(den[dd] == 1, "divisor must be monic");
    while num.len() > dd {
        let lead = *num.last().unwrap() as u64;
        let k = num.len() - 1 - dd;
        if lead != 0 {
            for i in 0..=dd {
                let sub = (lead * den[i] as u64) % p as u64;
                let cur = num[k + i] as u64;
                num[k + i] = ((cur + p as u64 - sub) % p as u64) as u16;
            }
        }
        num.pop();
    }
    num
}

fn poly_is_zero(poly: &[u16]) -> bool {
    poly.iter().all(|&c| c == 0)
}

/// Tests irreducibility over GF(p) by trial division against every monic
/// polynomial of degree 1 through deg/2.
fn poly_irreducible(poly: &[u16], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        // Enumerate monic divisors of degree d by their digit encoding.
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut den = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                den.push((c % p as u64) as u16);
                c /= p as u64;
            }
            den.push(1);
            if poly_is_zero(&poly_rem(poly.to_vec(), &den, p)) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// Builds GF(p^a).  Fails unless p is prime, a >= 1 and p^a <= 2^16.
    pub fn new(p: u32, a: u32) -> Result<FiniteField, Error> {
        if !is_prime(p) {
            return Err(Error::BadField(format!("{p} is not prime")));
        }
        if a == 0 {
            return Err(Error::BadField("extension degree must be positive".into()));
        }
        let q = (p as u64).checked_pow(a).filter(|&q| q <= 1 << 16).ok_or_else(|| {
            Error::BadField(format!("{p}^{a} exceeds the supported field size 2^16"))
        })? as u32;

        // Smallest monic irreducible of degree a, by digit encoding of the
        // non-leading coefficients.
        let mut modulus = None;
        for code in 0..(p as u64).pow(a) {
            let mut poly = Vec::with_capacity(a as usize + 1);
            let mut c = code;
            for _ in 0..a {
                poly.push((c % p as u64) as u16);
                c /= p as u64;
            }
            poly.push(1);
            if poly_irreducible(&poly, p) {
                modulus = Some(poly);
                break;
            }
        }
        let modulus = modulus.expect("an irreducible polynomial of each degree exists");

        let mut coeffs = Vec::with_capacity(q as usize * a as usize);
        for i in 0..q {
            let mut c = i;
            for _ in 0..a {
                coeffs.push((c % p) as u16);
                c /= p;
            }
        }

        let mut field = FiniteField { p, a, q, modulus, coeffs, mul_tab: None, add_tab: None, inv_tab: None };
        if (q as u64) <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for x in 0..self.q {
            for y in x..self.q {
                let s = self.add_direct(Fe(x), Fe(y)).0 as u16;
                let m = self.mul_direct(Fe(x), Fe(y)).0 as u16;
                add[x as usize * q + y as usize] = s;
                add[y as usize * q + x as usize] = s;
                mul[x as usize * q + y as usize] = m;
                mul[y as usize * q + x as usize] = m;
            }
        }
        let mut inv = vec![0u16; q];
        for x in 1..q {
            if inv[x] != 0 {
                continue;
            }
            for y in 1..q {
                if mul[x * q + y] == 1 {
                    inv[x] = y as u16;
                    inv[y] = x as u16;
                    break;
                }
            }
        }
        self.add_tab = Some(add);
        self.mul_tab = Some(mul);
        self.inv_tab = Some(inv);
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.a
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The defining polynomial, low-degree coefficients first.
    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }

    pub fn elem(&self, i: u32) -> Fe {
        assert!(i < self.q, "element index {i} out of range for GF({})", self.q);
        Fe(i)
    }

    pub fn elems(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    /// Coefficient vector of x over GF(p), low degree first, length a.
    pub fn coeff_slice(&self, x: Fe) -> &[u16] {
        let a = self.a as usize;
        &self.coeffs[x.0 as usize * a..x.0 as usize * a + a]
    }

    pub fn from_coeffs(&self, digits: &[u16]) -> Fe {
        assert!(digits.len() <= self.a as usize || digits[self.a as usize..].iter().all(|&c| c == 0));
        let mut idx = 0u64;
        for (j, &c) in digits.iter().enumerate().take(self.a as usize) {
            debug_assert!((c as u32) < self.p);
            idx += c as u64 * (self.p as u64).pow(j as u32);
        }
        Fe(idx as u32)
    }

    fn add_direct(&self, x: Fe, y: Fe) -> Fe {
        let a = self.a as usize;
        let xs = &self.coeffs[x.0 as usize * a..x.0 as usize * a + a];
        let ys = &self.coeffs[y.0 as usize * a..y.0 as usize * a + a];
        let mut idx = 0u64;
        let mut pw = 1u64;
        for j in 0..a {
            let d = (xs[j] as u32 + ys[j] as u32) % self.p;
            idx += d as u64 * pw;
            pw *= self.p as u64;
        }
        Fe(idx as u32)
    }

    fn mul_direct(&self, x: Fe, y: Fe) -> Fe {
        let a = self.a as usize;
        let xs = &self.coeffs[x.0 as usize * a..x.0 as usize * a + a];
        let ys = &self.coeffs[y.0 as usize * a..y.0 as usize * a + a];
        let mut prod = vec![0u16; 2 * a - 1];
        for i in 0..a {
            if xs[i] == 0 {
                continue;
            }
            for j in 0..a {
                let t = (prod[i + j] as u64 + xs[i] as u64 * ys[j] as u64) % self.p as u64;
                prod[i + j] = t as u16;
            }
        }
        let rem = poly_rem(prod, &self.modulus, self.p);
        self.from_coeffs(&rem)
    }

    pub fn add(&self, x: Fe, y: Fe) -> Fe {
        match &self.add_tab {
            Some(t) => Fe(t[x.0 as usize * self.q as usize + y.0 as usize] as u32),
            None => self.add_direct(x, y),
        }
    }

    pub fn neg(&self, x: Fe) -> Fe {
        let a = self.a as usize;
        let xs = &self.coeffs[x.0 as usize * a..x.0 as usize * a + a];
        let digits: Vec<u16> = xs.iter().map(|&c| ((self.p - c as u32) % self.p) as u16).collect();
        self.from_coeffs(&digits)
    }

    pub fn sub(&self, x: Fe, y: Fe) -> Fe {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Fe, y: Fe) -> Fe {
        match &self.mul_tab {
            Some(t) => Fe(t[x.0 as usize * self.q as usize + y.0 as usize] as u32),
            None => self.mul_direct(x, y),
        }
    }

    pub fn inv(&self, x: Fe) -> Result<Fe, Error> {
        if x == Fe::ZERO {
            return Err(Error::BadField("inverse of zero".into()));
        }
        match &self.inv_tab {
            Some(t) => Ok(Fe(t[x.0 as usize] as u32)),
            // q - 2 >= 0 here: a field has at least two elements.
            None => Ok(self.pow(x, self.q as u64 - 2)),
        }
    }

    pub fn div(&self, x: Fe, y: Fe) -> Result<Fe, Error> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: Fe, mut e: u64) -> Fe {
        let mut base = x;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius power x -> x^(p^j) for 0 <= j < a.
    pub fn frobenius(&self, x: Fe, j: u32) -> Fe {
        assert!(j < self.a, "frobenius exponent {j} out of range for degree {}", self.a);
        let e = (self.p as u64).pow(j);
        self.pow(x, e)
    }

    /// Multiplicative order of x; zero is rejected.
    pub fn elem_order(&self, x: Fe) -> Result<u32, Error> {
        if x == Fe::ZERO {
            return Err(Error::BadField("order of zero".into()));
        }
        let mut n = 1u32;
        let mut acc = x;
        while acc != Fe::ONE {
            acc = self.mul(acc, x);
            n += 1;
        }
        Ok(n)
    }

    /// The smallest element (in enumeration order) generating the
    /// multiplicative group.
    pub fn generator(&self) -> Fe {
        for x in self.elems().skip(1) {
            if self.elem_order(x).unwrap() == self.q - 1 {
                return x;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    /// The Suzuki twist on GF(2^(2m+1)): x -> x^(2^(m+1)), the square root
    /// of the squaring map.  Rejects fields of even extension degree and odd
    /// characteristic.
    pub fn twist_theta(&self, x: Fe) -> Result<Fe, Error> {
        if self.p != 2 || self.a % 2 == 0 {
            return Err(Error::BadField(format!(
                "the twist is defined on GF(2^(2m+1)), not GF({}^{})",
                self.p, self.a
            )));
        }
        let m = (self.a - 1) / 2;
        Ok(self.pow(x, 1u64 << (m + 1)))
    }
}

/// The embedding of GF(p^b) into GF(p^a) when b divides a, as a lookup
/// table indexed by subfield element.  The image of the subfield generator x
/// is the smallest root (in enumeration order) of the subfield's defining
/// polynomial inside the big field, so the embedding is deterministic.
pub fn embed_subfield(big: &FiniteField, small: &FiniteField) -> Result<Vec<Fe>, Error> {
    if small.p() != big.p() {
        return Err(Error::BadField("subfield embedding requires equal characteristic".into()));
    }
    if big.degree() % small.degree() != 0 {
        return Err(Error::BadField(format!(
            "GF({}) is not a subfield of GF({})",
            small.q(),
            big.q()
        )));
    }
    let root = big
        .elems()
        .find(|&r| {
            let mut acc = Fe::ZERO;
            let mut pw = Fe::ONE;
            for &c in small.modulus() {
                acc = big.add(acc, big.mul(big.elem(c as u32), pw));
                pw = big.mul(pw, r);
            }
            acc == Fe::ZERO
        })
        .expect("the subfield modulus splits in the big field");
    let table = small
        .elems()
        .map(|x| {
            let mut acc = Fe::ZERO;
            let mut pw = Fe::ONE;
            for &c in small.coeff_slice(x) {
                acc = big.add(acc, big.mul(big.elem(c as u32), pw));
                pw = big.mul(pw, root);
            }
            acc
        })
        .collect();
    Ok(table)
}
