//! Traces of Frobenius for elliptic curves y² = cubic, by enumeration
//! and by a binomial congruence mod p.
//!
//! For an elliptic curve over F_q with N₁ = q + 1 − t points, the
//! eigenvalue power sums s_n = ω^n + ω̄^n obey s_n = t·s_{n−1} − q·s_{n−2}
//! and give N_n = q^n + 1 − s_n over every extension, so the single
//! integer t determines all counts. The congruence route computes
//! t mod p from a short sum of products of two binomial coefficients and
//! powers of the coefficients, which pins down t exactly once 4√q < p,
//! i.e. for prime fields with p ≥ 17.

use crate::charsums::{discriminant_cubic, CubicCoeffs};
use crate::error::{Error, Result};
use crate::field::{is_prime, FieldCtx, FieldElement};

/// An exact point count over F_{q^n}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointCount {
    pub n: u32,
    pub value: u128,
}

/// The field size q and integer trace t of Frobenius of an elliptic
/// curve, with the Hasse bound t² ≤ 4q enforced at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobeniusData {
    q: u64,
    trace: i64,
}

impl FrobeniusData {
    pub fn new(q: u64, trace: i64) -> Result<Self> {
        let t2 = (trace as i128) * (trace as i128);
        if t2 > 4 * q as i128 {
            return Err(Error::Precondition(format!(
                "trace {trace} violates the Hasse bound for q = {q}"
            )));
        }
        Ok(FrobeniusData { q, trace })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn trace(&self) -> i64 {
        self.trace
    }

    /// s_n = ω^n + ω̄^n for the Frobenius eigenvalues ω, ω̄, via
    /// s_0 = 2, s_1 = t, s_n = t·s_{n−1} − q·s_{n−2}.
    pub fn s_n(&self, n: u32) -> Result<i128> {
        let (t, q) = (self.trace as i128, self.q as i128);
        let mut prev: i128 = 2;
        let mut cur: i128 = t;
        if n == 0 {
            return Ok(prev);
        }
        for _ in 1..n {
            let next = t
                .checked_mul(cur)
                .and_then(|tc| q.checked_mul(prev).and_then(|qp| tc.checked_sub(qp)))
                .ok_or(Error::Overflow("eigenvalue power sum exceeds 128 bits"))?;
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// N_n = q^n + 1 − s_n.
    pub fn count(&self, n: u32) -> Result<PointCount> {
        let mut qn: i128 = 1;
        for _ in 0..n {
            qn = qn
                .checked_mul(self.q as i128)
                .ok_or(Error::Overflow("q^n exceeds 128 bits"))?;
        }
        let value = qn + 1 - self.s_n(n)?;
        Ok(PointCount {
            n,
            value: value
                .try_into()
                .map_err(|_| Error::Overflow("point count is negative"))?,
        })
    }

    /// The eigenvalue ω = t/2 + i√(q − t²/4) with nonnegative imaginary
    /// part, printed exactly: halves stay as fractions.
    pub fn omega_string(&self) -> String {
        let (t, q) = (self.trace, self.q as i64);
        if t % 2 == 0 {
            let re = t / 2;
            format!("{} + i*sqrt({})", re, q - re * re)
        } else {
            format!("{}/2 + i*sqrt({}/4)", t, 4 * q - t * t)
        }
    }
}

/// A trace known only modulo the characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceResidue {
    pub p: u64,
    pub residue: u64,
}

impl TraceResidue {
    /// The unique representative t ≡ residue (mod p) with t² ≤ 4q, if
    /// the Hasse interval is shorter than p (always true for prime
    /// fields with p ≥ 17 and never for proper extensions).
    pub fn resolve(&self, q: u64) -> Option<i64> {
        let width_ok = 16 * q < self.p * self.p;
        if !width_ok {
            return None;
        }
        [self.residue as i64, self.residue as i64 - self.p as i64]
            .into_iter()
            .find(|&cand| (cand as i128) * (cand as i128) <= 4 * q as i128)
    }
}

/// How `trace_general` should obtain the trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceStrategy {
    /// Enumerate the q affine points.
    Naive,
    /// Binomial congruence mod p, then resolve via the Hasse bound;
    /// errors when the residue cannot pin down the integer trace.
    Congruence,
    /// Congruence when resolvable, enumeration otherwise.
    Auto,
}

/// Trace by direct point enumeration: counts the affine solutions of
/// y² = f(x), adds the point at infinity, and returns t = q + 1 − N₁.
pub fn trace_naive(ctx: &FieldCtx, f: &CubicCoeffs) -> Result<FrobeniusData> {
    let q = ctx.size();
    let mut n1: i128 = 1;
    for x in ctx.enumerate() {
        let v = f.eval(ctx, x);
        n1 += if v.is_zero() {
            1
        } else if ctx.dlog(v).expect("nonzero").is_multiple_of(2) {
            2
        } else {
            0
        };
    }
    FrobeniusData::new(q, (q as i128 + 1 - n1) as i64)
}

/// Factorials mod p for Lucas-style binomial coefficients.
pub struct LucasTable {
    p: u64,
    fact: Vec<u64>,
    inv_fact: Vec<u64>,
}

impl LucasTable {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::BadCharacteristic(p));
        }
        let mut fact = vec![1u64; p as usize];
        for i in 1..p as usize {
            fact[i] = fact[i - 1] * i as u64 % p;
        }
        let mut inv_fact = vec![1u64; p as usize];
        inv_fact[p as usize - 1] = modpow(fact[p as usize - 1], p - 2, p);
        for i in (1..p as usize).rev() {
            inv_fact[i - 1] = inv_fact[i] * i as u64 % p;
        }
        Ok(LucasTable { p, fact, inv_fact })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// binom(n, m) mod p by Lucas' theorem: the product of the
    /// digit-wise binomials base p.
    pub fn binom_mod_p(&self, mut n: u64, mut m: u64) -> u64 {
        let mut acc = 1u64;
        while n > 0 || m > 0 {
            let (nd, md) = (n % self.p, m % self.p);
            if md > nd {
                return 0;
            }
            acc = acc * self.fact[nd as usize] % self.p * self.inv_fact[md as usize] % self.p
                * self.inv_fact[(nd - md) as usize]
                % self.p;
            n /= self.p;
            m /= self.p;
        }
        acc
    }
}

fn modpow(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc as u128 as u64 * base % m;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Trace of y² = Ax³ + Bx + C over the field of ctx, modulo p:
///
/// t ≡ Σ_l binom((q−1)/2, 2l) · binom(2l, (q−1)/2 − l)
///        · A^((q−1)/2 − l) · B^(3l − (q−1)/2) · C^((q−1)/2 − 2l)  (mod p)
///
/// with l running over ⌈(q−1)/6⌉ ..= ⌊(q−1)/4⌋ and the convention
/// 0⁰ = 1 when B or C vanishes. The sum is evaluated inside the field
/// and must land in the prime subfield.
pub fn trace_congruence(
    ctx: &FieldCtx,
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
) -> Result<TraceResidue> {
    let cubic = CubicCoeffs::new(a, ctx.zero(), b, c)?;
    if discriminant_cubic(ctx, &cubic).is_zero() {
        return Err(Error::SingularCurve);
    }
    let p = ctx.characteristic();
    let lucas = LucasTable::new(p)?;
    let half = (ctx.size() - 1) / 2;
    let lo = (ctx.size() - 1).div_ceil(6);
    let hi = (ctx.size() - 1) / 4;
    let mut acc = ctx.zero();
    for l in lo..=hi {
        let outer = lucas.binom_mod_p(half, 2 * l);
        if outer == 0 {
            continue;
        }
        let inner = lucas.binom_mod_p(2 * l, half - l);
        if inner == 0 {
            continue;
        }
        let coeff = ctx.element((outer * inner % p) as i64);
        let term = ctx.mul(
            coeff,
            ctx.mul(
                ctx.pow(a, half - l),
                ctx.mul(ctx.pow(b, 3 * l - half), ctx.pow(c, half - 2 * l)),
            ),
        );
        acc = ctx.add(acc, term);
    }
    let residue = ctx
        .prime_subfield_value(acc)
        .ok_or(Error::ResidueOutsidePrimeField)?;
    Ok(TraceResidue { p, residue })
}

/// Exact trace of y² = Ax³ + Bx + C over a prime field with p ≥ 17:
/// the congruence residue has a unique lift inside the Hasse interval.
pub fn trace_exact(
    ctx: &FieldCtx,
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
) -> Result<FrobeniusData> {
    let residue = trace_congruence(ctx, a, b, c)?;
    let t = residue
        .resolve(ctx.size())
        .ok_or(Error::TraceNotResolvable {
            p: ctx.characteristic(),
            k: ctx.extension_degree(),
        })?;
    FrobeniusData::new(ctx.size(), t)
}

/// Trace of y² = ax³ + bx² + cx + d for a nonsingular cubic, depressing
/// the x² term when the congruence route is taken. Characteristic 3 is
/// rejected outright: the depression substitution divides by 3.
pub fn trace_general(
    ctx: &FieldCtx,
    f: &CubicCoeffs,
    strategy: TraceStrategy,
) -> Result<FrobeniusData> {
    if ctx.characteristic() == 3 {
        return Err(Error::CharacteristicThree);
    }
    if discriminant_cubic(ctx, f).is_zero() {
        return Err(Error::SingularCurve);
    }
    let resolvable = ctx.extension_degree() == 1 && ctx.characteristic() >= 17;
    match strategy {
        TraceStrategy::Naive => trace_naive(ctx, f),
        TraceStrategy::Congruence | TraceStrategy::Auto => {
            if !resolvable {
                return match strategy {
                    TraceStrategy::Congruence => Err(Error::TraceNotResolvable {
                        p: ctx.characteristic(),
                        k: ctx.extension_degree(),
                    }),
                    _ => trace_naive(ctx, f),
                };
            }
            let (a, b, c) = depress(ctx, f)?;
            trace_exact(ctx, a, b, c)
        }
    }
}

/// Coefficients (A, B, C) of the depressed cubic Ax³ + Bx + C obtained
/// from ax³ + bx² + cx + d by x → x − b/(3a); the substitution is a
/// bijection on points, so the trace is unchanged.
pub fn depress(
    ctx: &FieldCtx,
    f: &CubicCoeffs,
) -> Result<(FieldElement, FieldElement, FieldElement)> {
    if ctx.characteristic() == 3 {
        return Err(Error::CharacteristicThree);
    }
    if f.b.is_zero() {
        return Ok((f.a, f.c, f.d));
    }
    let (a, b, c, d) = (f.a, f.b, f.c, f.d);
    let b2 = ctx.mul(b, b);
    let three_a = ctx.mul(ctx.element(3), a);
    let big_b = ctx.sub(c, ctx.div(b2, three_a)?);
    let term1 = ctx.div(ctx.mul(b, c), three_a)?;
    let term2 = ctx.div(
        ctx.mul(ctx.element(2), ctx.mul(b2, b)),
        ctx.mul(ctx.element(27), ctx.mul(a, a)),
    )?;
    let big_c = ctx.add(ctx.sub(d, term1), term2);
    Ok((a, big_b, big_c))
}

/// N_n for the elliptic curve y² = cubic over F_{q^n}.
pub fn count_elliptic(ctx: &FieldCtx, f: &CubicCoeffs, n: u32) -> Result<PointCount> {
    trace_general(ctx, f, TraceStrategy::Auto)?.count(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime_ctx(p: u64) -> FieldCtx {
        FieldCtx::new(p, 1).unwrap()
    }

    #[test]
    fn golden_traces_via_both_routes() {
        // (p, A, B, C, t) for curves y² = Ax³ + Bx + C.
        let cases: &[(u64, i64, i64, i64, i64)] = &[
            (19, 1, 0, 2, 7),
            (29, 2, 0, 1, 0),
            (29, 1, 0, 2, 0),
            (67, 1, 24, 0, 0),
            (37, -52, 0, 12, -10),
            (41, 1, 5, 0, -10),
            (41, -1, 5, 0, -10),
            (103, 1, 0, -1, -20),
            (103, 1, 0, -4, 7),
            (103, -4, 0, 1, -13),
        ];
        for &(p, a, b, c, t) in cases {
            let ctx = prime_ctx(p);
            let f = CubicCoeffs::from_ints(&ctx, a, 0, b, c).unwrap();
            assert_eq!(trace_naive(&ctx, &f).unwrap().trace(), t, "naive p={p}");
            let exact = trace_exact(&ctx, ctx.element(a), ctx.element(b), ctx.element(c)).unwrap();
            assert_eq!(exact.trace(), t, "congruence p={p}");
        }
    }

    #[test]
    fn golden_trace_with_quadratic_term() {
        let ctx = prime_ctx(73);
        let f = CubicCoeffs::from_ints(&ctx, 2, 0, -2, 1).unwrap();
        assert_eq!(trace_naive(&ctx, &f).unwrap().trace(), 16);
        assert_eq!(
            trace_general(&ctx, &f, TraceStrategy::Congruence)
                .unwrap()
                .trace(),
            16
        );
    }

    #[test]
    fn congruence_matches_naive_mod_p_small_primes() {
        for p in [5u64, 7, 11, 13] {
            let ctx = prime_ctx(p);
            for a in ctx.enumerate().skip(1) {
                for b in ctx.enumerate() {
                    for c in ctx.enumerate() {
                        let f = CubicCoeffs::new(a, ctx.zero(), b, c).unwrap();
                        if discriminant_cubic(&ctx, &f).is_zero() {
                            continue;
                        }
                        let t = trace_naive(&ctx, &f).unwrap().trace();
                        let r = trace_congruence(&ctx, a, b, c).unwrap().residue;
                        assert_eq!(t.rem_euclid(p as i64) as u64, r, "p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn congruence_over_extension_field_matches_naive() {
        let base = prime_ctx(5);
        let ext = crate::field::Extension::new(&base, 2).unwrap();
        let fq = ext.field();
        for a in base.enumerate().skip(1) {
            for c in base.enumerate() {
                let (ea, ec) = (ext.embed(a), ext.embed(c));
                let f = CubicCoeffs::new(ea, fq.zero(), fq.one(), ec).unwrap();
                if discriminant_cubic(fq, &f).is_zero() {
                    continue;
                }
                let t = trace_naive(fq, &f).unwrap().trace();
                let r = trace_congruence(fq, ea, fq.one(), ec).unwrap().residue;
                assert_eq!(t.rem_euclid(5) as u64, r);
            }
        }
    }

    #[test]
    fn unresolvable_residues_are_flagged() {
        let ctx = prime_ctx(13);
        let f = CubicCoeffs::from_ints(&ctx, 1, 0, 1, 1).unwrap();
        assert!(matches!(
            trace_general(&ctx, &f, TraceStrategy::Congruence),
            Err(Error::TraceNotResolvable { p: 13, k: 1 })
        ));
        // Auto falls back to enumeration instead.
        assert!(trace_general(&ctx, &f, TraceStrategy::Auto).is_ok());
    }

    #[test]
    fn depression_preserves_the_trace() {
        for p in [5u64, 7, 13, 19] {
            let ctx = prime_ctx(p);
            for a in ctx.enumerate().skip(1) {
                for b in ctx.enumerate().skip(1) {
                    for d in ctx.enumerate() {
                        let f = CubicCoeffs::new(a, b, ctx.one(), d).unwrap();
                        if discriminant_cubic(&ctx, &f).is_zero() {
                            continue;
                        }
                        let (da, db, dc) = depress(&ctx, &f).unwrap();
                        let g = CubicCoeffs::new(da, ctx.zero(), db, dc).unwrap();
                        assert_eq!(
                            trace_naive(&ctx, &f).unwrap(),
                            trace_naive(&ctx, &g).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn singular_curves_are_rejected() {
        let ctx = prime_ctx(19);
        // y² = x³: triple root.
        let f = CubicCoeffs::from_ints(&ctx, 1, 0, 0, 0).unwrap();
        assert!(matches!(
            trace_general(&ctx, &f, TraceStrategy::Auto),
            Err(Error::SingularCurve)
        ));
        assert!(matches!(
            trace_congruence(&ctx, ctx.one(), ctx.zero(), ctx.zero()),
            Err(Error::SingularCurve)
        ));
    }

    #[test]
    fn eigenvalue_power_sums() {
        let w = FrobeniusData::new(19, 7).unwrap();
        assert_eq!(w.s_n(0).unwrap(), 2);
        assert_eq!(w.s_n(1).unwrap(), 7);
        assert_eq!(w.s_n(2).unwrap(), 7 * 7 - 2 * 19);
        let z = FrobeniusData::new(29, 0).unwrap();
        assert_eq!(z.s_n(2).unwrap(), -58);
        assert_eq!(z.s_n(4).unwrap(), 1682);
        // N₂ = q² + 1 − s₂ for the golden sextic building block.
        assert_eq!(z.count(2).unwrap().value, 29 * 29 + 1 + 58);
    }

    #[test]
    fn power_sums_satisfy_hasse_bound() {
        for (q, t) in [(19u64, 7i64), (29, 0), (103, -20), (9, 6), (25, -10)] {
            let w = FrobeniusData::new(q, t).unwrap();
            for n in 0..=12u32 {
                let s = w.s_n(n).unwrap();
                let qn = (q as i128).pow(n);
                assert!(s * s <= 4 * qn, "q={q} t={t} n={n}");
            }
        }
    }

    #[test]
    fn hasse_bound_enforced_on_construction() {
        assert!(FrobeniusData::new(19, 9).is_err());
        assert!(FrobeniusData::new(19, -9).is_err());
        assert!(FrobeniusData::new(19, 8).is_ok());
    }

    #[test]
    fn counts_match_enumeration_over_extensions() {
        let base = prime_ctx(7);
        let f = CubicCoeffs::from_ints(&base, 1, 0, 1, 1).unwrap();
        let data = trace_naive(&base, &f).unwrap();
        for n in 1..=2u32 {
            let ext = crate::field::Extension::new(&base, n).unwrap();
            let fq = ext.field();
            let g = CubicCoeffs {
                a: ext.embed(f.a),
                b: ext.embed(f.b),
                c: ext.embed(f.c),
                d: ext.embed(f.d),
            };
            let direct = trace_naive(fq, &g).unwrap();
            assert_eq!(data.s_n(n).unwrap(), direct.trace() as i128);
            assert_eq!(data.count(n).unwrap().value, direct.count(1).unwrap().value);
        }
    }

    #[test]
    fn omega_strings_are_exact() {
        assert_eq!(
            FrobeniusData::new(37, -10).unwrap().omega_string(),
            "-5 + i*sqrt(12)"
        );
        assert_eq!(
            FrobeniusData::new(19, 7).unwrap().omega_string(),
            "7/2 + i*sqrt(27/4)"
        );
        assert_eq!(
            FrobeniusData::new(103, -13).unwrap().omega_string(),
            "-13/2 + i*sqrt(243/4)"
        );
    }

    #[test]
    fn lucas_binomials_match_direct_computation() {
        let table = LucasTable::new(13).unwrap();
        // Pascal's rule as an exhaustive check for two-digit arguments.
        for n in 0..169u64 {
            for m in 0..=n {
                let direct = {
                    // binom(n, m) mod 13 via the recurrence on a row.
                    let mut row = vec![1u64];
                    for _ in 0..n {
                        let mut next = vec![1u64];
                        for w in row.windows(2) {
                            next.push((w[0] + w[1]) % 13);
                        }
                        next.push(1);
                        row = next;
                    }
                    row[m as usize]
                };
                assert_eq!(table.binom_mod_p(n, m), direct, "n={n} m={m}");
            }
        }
        assert_eq!(table.binom_mod_p(5, 9), 0);
    }
}
