//! Construction of and exact arithmetic in F_{p^k} for odd primes p.
//!
//! A [`FieldCtx`] owns the modulus polynomial together with full
//! exponent/logarithm tables for the cyclic group F_{p^k}^*, so
//! multiplication, inversion, powering, and discrete logarithms are all
//! table lookups. Elements are stored as a base-p digit encoding of their
//! coefficient vector, which keeps them `Copy` and keeps every residue
//! reduced by construction.
//!
//! Construction is fully deterministic: the modulus is the
//! lexicographically smallest monic irreducible of degree k (coefficients
//! compared constant term first), and the generator is the smallest
//! element of full multiplicative order in the same coefficient order.

use crate::error::{Error, Result};

/// Hard cap on p^k; fields are enumeration-scale by design.
pub const MAX_FIELD_SIZE: u64 = 10_000_000;

const LOG_ZERO: u32 = u32::MAX;

/// An element of a specific [`FieldCtx`], stored as the base-p encoding
/// of its coefficient vector (constant term in the lowest digit).
///
/// Elements carry no pointer back to their field; all arithmetic goes
/// through the owning [`FieldCtx`], which is also what keeps this type
/// `Copy` and cheap to put in large tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    /// Raw encoding, Sum_i c_i p^i for coefficients c_i.
    pub fn encoding(self) -> u64 {
        self.0 as u64
    }

    /// True for the additive identity of every field.
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A concrete finite field F_{p^k}, p an odd prime, with precomputed
/// discrete-log tables over a deterministic generator.
#[derive(Clone)]
pub struct FieldCtx {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus, low-to-high coefficients, length k + 1. For k = 1
    /// this is just x, i.e. F_p itself.
    modulus: Vec<u64>,
    /// exp[j] = encoding of g^j for 0 <= j < q - 1.
    exp: Vec<u32>,
    /// log[enc] = j with g^j = enc; LOG_ZERO marks the zero element.
    log: Vec<u32>,
    generator: FieldElement,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl FieldCtx {
    /// Builds F_{p^k}. Rejects even, unit, or composite p, zero k, and
    /// sizes beyond [`MAX_FIELD_SIZE`].
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::BadCharacteristic(p));
        }
        if k == 0 {
            return Err(Error::ZeroExtensionDegree);
        }
        let q = checked_pow(p, k).ok_or(Error::FieldTooLarge {
            p,
            k,
            cap: MAX_FIELD_SIZE,
        })?;
        if q > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge {
                p,
                k,
                cap: MAX_FIELD_SIZE,
            });
        }

        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            find_modulus(p, k)
        };
        let generator_poly = find_generator(p, k, q, &modulus);
        let gen_enc = encode(&generator_poly, p);

        // Walk the cyclic group once to fill both tables.
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![LOG_ZERO; q as usize];
        if k == 1 {
            let mut cur = 1u64;
            for (j, slot) in exp.iter_mut().enumerate() {
                *slot = cur as u32;
                debug_assert_eq!(log[cur as usize], LOG_ZERO);
                log[cur as usize] = j as u32;
                cur = cur * gen_enc % p;
            }
            assert_eq!(cur, 1, "generator order mismatch");
        } else {
            let mut cur = vec![1u64];
            for (j, slot) in exp.iter_mut().enumerate() {
                let enc = encode(&cur, p);
                *slot = enc as u32;
                debug_assert_eq!(log[enc as usize], LOG_ZERO);
                log[enc as usize] = j as u32;
                cur = pmulmod(&cur, &generator_poly, &modulus, p);
            }
            assert_eq!(encode(&cur, p), 1, "generator order mismatch");
        }

        Ok(FieldCtx {
            p,
            k,
            q,
            modulus,
            exp,
            log,
            generator: FieldElement(gen_enc as u32),
        })
    }

    /// Field characteristic p.
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Extension degree k over the prime field.
    pub fn extension_degree(&self) -> u32 {
        self.k
    }

    /// Number of elements, p^k.
    pub fn size(&self) -> u64 {
        self.q
    }

    /// Monic modulus polynomial, low-to-high coefficients.
    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.modulus
    }

    /// The canonical multiplicative generator.
    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The image of an integer under Z -> F_{p^k} (a constant polynomial).
    pub fn element(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    /// Rebuilds an element from its raw encoding.
    pub fn from_encoding(&self, enc: u64) -> Result<FieldElement> {
        if enc >= self.q {
            return Err(Error::EncodingOutOfRange { enc, size: self.q });
        }
        Ok(FieldElement(enc as u32))
    }

    /// Builds an element from coefficients (constant term first); entries
    /// are reduced mod p and the slice may be shorter than k.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElement> {
        if coeffs.len() > self.k as usize {
            return Err(Error::EncodingOutOfRange {
                enc: u64::MAX,
                size: self.q,
            });
        }
        let mut enc = 0u64;
        let mut mult = 1u64;
        for &c in coeffs {
            enc += c.rem_euclid(self.p as i64) as u64 * mult;
            mult *= self.p;
        }
        Ok(FieldElement(enc as u32))
    }

    /// Coefficient vector of length k, constant term first.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        let mut enc = x.encoding();
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(enc % self.p);
            enc /= self.p;
        }
        out
    }

    /// For elements of the prime subfield, the residue they represent.
    pub fn prime_subfield_value(&self, x: FieldElement) -> Option<u64> {
        if x.encoding() < self.p {
            Some(x.encoding())
        } else {
            None
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            let s = a.encoding() + b.encoding();
            return FieldElement(if s >= self.p { s - self.p } else { s } as u32);
        }
        let (mut ea, mut eb) = (a.encoding(), b.encoding());
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.k {
            let mut d = ea % self.p + eb % self.p;
            if d >= self.p {
                d -= self.p;
            }
            ea /= self.p;
            eb /= self.p;
            out += d * mult;
            mult *= self.p;
        }
        FieldElement(out as u32)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.k == 1 {
            let e = a.encoding();
            return FieldElement(if e == 0 { 0 } else { self.p - e } as u32);
        }
        let mut ea = a.encoding();
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.k {
            let d = ea % self.p;
            ea /= self.p;
            out += if d == 0 { 0 } else { self.p - d } * mult;
            mult *= self.p;
        }
        FieldElement(out as u32)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement(0);
        }
        let la = self.log[a.0 as usize] as u64;
        let lb = self.log[b.0 as usize] as u64;
        FieldElement(self.exp[((la + lb) % (self.q - 1)) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let la = self.log[a.0 as usize] as u64;
        let ord = self.q - 1;
        Ok(FieldElement(self.exp[((ord - la) % ord) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// x^e with the convention 0^0 = 1.
    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        if x.is_zero() {
            return self.zero();
        }
        let ord = self.q - 1;
        let lx = self.log[x.0 as usize] as u64;
        FieldElement(self.exp[(lx * (e % ord) % ord) as usize])
    }

    /// Index of x in the cyclic group written to base the canonical
    /// generator: returns the unique j in [0, q - 1) with g^j = x.
    pub fn dlog(&self, x: FieldElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::DiscreteLogOfZero);
        }
        Ok(self.log[x.0 as usize] as u64)
    }

    /// All field elements exactly once, zero first, in encoding order.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|e| FieldElement(e as u32))
    }

    /// Sum of x^m over every x in the field, with 0^0 = 1.
    pub fn power_sum(&self, m: u64) -> FieldElement {
        let mut acc = self.zero();
        for x in self.enumerate() {
            acc = self.add(acc, self.pow(x, m));
        }
        acc
    }

    /// q^n as a 128-bit integer.
    pub fn size_pow(&self, n: u32) -> Result<u128> {
        let mut acc: u128 = 1;
        for _ in 0..n {
            acc = acc
                .checked_mul(self.q as u128)
                .ok_or(Error::Overflow("q^n exceeds 128 bits"))?;
        }
        Ok(acc)
    }

    /// Evaluates a polynomial given by coefficients in degree-ascending
    /// order at x, by Horner's rule.
    pub fn horner(&self, coeffs: &[FieldElement], x: FieldElement) -> FieldElement {
        let mut acc = self.zero();
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }

    /// Product of two polynomials given in degree-ascending order.
    pub fn poly_mul(&self, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(ai, bj));
            }
        }
        out
    }
}

/// A base field together with a constructed extension F_{q^n} and the
/// canonical embedding between them.
///
/// The embedding maps the class of x in the base field to the smallest
/// root (in encoding order) of the base modulus inside the extension,
/// which for a prime base field is the identity on residues.
pub struct Extension {
    base: FieldCtx,
    ext: FieldCtx,
    theta_image: FieldElement,
    n: u32,
}

impl Extension {
    /// Builds F_{q^n} over the given base field F_q = F_{p^k}.
    pub fn new(base: &FieldCtx, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroExtensionDegree);
        }
        let ext = if n == 1 {
            base.clone()
        } else {
            FieldCtx::new(base.p, base.k * n)?
        };
        let theta_image = if base.k == 1 {
            ext.element(0)
        } else {
            // The base modulus splits in any extension of its own degree;
            // pick the first root in enumeration order.
            let coeffs: Vec<FieldElement> = base
                .modulus
                .iter()
                .map(|&c| ext.element(c as i64))
                .collect();
            let mut found = None;
            for cand in ext.enumerate() {
                let mut acc = ext.zero();
                for &c in coeffs.iter().rev() {
                    acc = ext.add(ext.mul(acc, cand), c);
                }
                if acc.is_zero() {
                    found = Some(cand);
                    break;
                }
            }
            found.expect("base modulus has a root in the extension")
        };
        Ok(Extension {
            base: base.clone(),
            ext,
            theta_image,
            n,
        })
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    /// The extension field F_{q^n}.
    pub fn field(&self) -> &FieldCtx {
        &self.ext
    }

    /// Relative degree n.
    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Ring embedding F_q -> F_{q^n}.
    pub fn embed(&self, x: FieldElement) -> FieldElement {
        if self.base.k == 1 || self.n == 1 {
            return x;
        }
        let mut acc = self.ext.zero();
        for &c in self.base.coeffs(x).iter().rev() {
            acc = self.ext.add(
                self.ext.mul(acc, self.theta_image),
                self.ext.element(c as i64),
            );
        }
        acc
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn checked_pow(p: u64, k: u32) -> Option<u64> {
    let mut q: u64 = 1;
    for _ in 0..k {
        q = q.checked_mul(p)?;
        if q > MAX_FIELD_SIZE {
            return None;
        }
    }
    Some(q)
}

/// Prime factors of n, ascending, without multiplicities.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn encode(poly: &[u64], p: u64) -> u64 {
    let mut enc = 0;
    for &c in poly.iter().rev() {
        enc = enc * p + c;
    }
    enc
}

// Dense polynomial helpers over F_p, coefficients low-to-high. Only used
// during field construction; steady-state arithmetic is table-driven.

fn ptrim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn pis_zero(v: &[u64]) -> bool {
    v.iter().all(|&c| c == 0)
}

fn prem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    // m is monic.
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for (i, &mi) in m.iter().take(dm).enumerate() {
                a[shift + i] = (a[shift + i] + (p - mi % p) * lead) % p;
            }
        }
        a.pop();
        ptrim(&mut a);
        if pis_zero(&a) {
            return vec![0];
        }
    }
    a
}

fn pmulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    ptrim(&mut prod);
    prem(prod, m, p)
}

fn ppowmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut sq = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = pmulmod(&acc, &sq, m, p);
        }
        sq = pmulmod(&sq, &sq, m, p);
        e >>= 1;
    }
    acc
}

fn modpow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn pgcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    ptrim(&mut a);
    ptrim(&mut b);
    while !pis_zero(&b) {
        // Make b monic so prem applies.
        let lead = *b.last().unwrap();
        if lead != 1 {
            let inv = modpow(lead, p - 2, p);
            for c in b.iter_mut() {
                *c = *c * inv % p;
            }
        }
        let r = prem(a, &b, p);
        a = b;
        b = r;
        ptrim(&mut b);
    }
    a
}

fn is_irreducible(f: &[u64], p: u64, k: u32) -> bool {
    // Distinct-degree criterion: x^(p^k) = x mod f, and for every prime
    // r | k, gcd(x^(p^(k/r)) - x, f) = 1.
    let x = vec![0u64, 1];
    let checkpoints: Vec<u32> = prime_factors(k as u64)
        .iter()
        .map(|&r| k / r as u32)
        .collect();
    let mut t = x.clone();
    for j in 1..=k {
        t = ppowmod(&t, p, f, p);
        if checkpoints.contains(&j) {
            // gcd(t - x, f) must be a unit.
            let mut diff = t.clone();
            if diff.len() < 2 {
                diff.resize(2, 0);
            }
            diff[1] = (diff[1] + p - 1) % p;
            ptrim(&mut diff);
            let g = pgcd(f.to_vec(), diff, p);
            if g.len() > 1 {
                return false;
            }
        }
    }
    t == x
}

/// Smallest monic irreducible of degree k, comparing coefficient tuples
/// (c_0, ..., c_{k-1}) lexicographically with the constant term first.
fn find_modulus(p: u64, k: u32) -> Vec<u64> {
    let count = checked_pow(p, k).expect("size already validated");
    for m in 0..count {
        // Digits of m, most significant first, give the tuple in lex order.
        let mut coeffs = vec![0u64; k as usize];
        let mut rem = m;
        for slot in coeffs.iter_mut().rev() {
            *slot = rem % p;
            rem /= p;
        }
        let mut f = coeffs;
        f.push(1);
        if is_irreducible(&f, p, k) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

/// Smallest element of full order q - 1, in the same coefficient-lex
/// order used for the modulus.
fn find_generator(p: u64, k: u32, q: u64, modulus: &[u64]) -> Vec<u64> {
    let factors = prime_factors(q - 1);
    for m in 1..q {
        let mut coeffs = vec![0u64; k as usize];
        let mut rem = m;
        for slot in coeffs.iter_mut().rev() {
            *slot = rem % p;
            rem /= p;
        }
        ptrim(&mut coeffs);
        if pis_zero(&coeffs) {
            continue;
        }
        let full_order = factors.iter().all(|&r| {
            let e = (q - 1) / r;
            if k == 1 {
                modpow(coeffs[0], e, p) != 1
            } else {
                let pw = ppowmod(&coeffs, e, modulus, p);
                pw != vec![1]
            }
        });
        if full_order {
            return coeffs;
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}
