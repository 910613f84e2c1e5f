//! Closed forms for complete character sums over F_{q^n}.
//!
//! Everything here evaluates sums of the shape Σ_x χ(f(x)) with x
//! ranging over the extension F_{q^n}, f a low-degree polynomial with
//! coefficients in the base field F_q, and χ the quadratic character or
//! a quartic character pair. The sums collapse to a short case analysis
//! on the factorization type of f: either a signed power sum s_n of
//! Frobenius eigenvalues of an attached elliptic curve, or plain ±1
//! character values at distinguished elements. No enumeration of F_{q^n}
//! happens in this module; n enters only through s_n and through the
//! parity rule for restricted characters.

use crate::characters::quadratic_char_pow;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::frobenius::{trace_general, TraceStrategy};

/// Coefficients (a, b, c, d) of a genuine cubic ax³ + bx² + cx + d,
/// with a ≠ 0 enforced at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubicCoeffs {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
}

impl CubicCoeffs {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::NotACubic);
        }
        Ok(CubicCoeffs { a, b, c, d })
    }

    /// Convenience constructor from integer residues.
    pub fn from_ints(ctx: &FieldCtx, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        CubicCoeffs::new(
            ctx.element(a),
            ctx.element(b),
            ctx.element(c),
            ctx.element(d),
        )
    }

    /// The reciprocal cubic dx³ + cx² + bx + a; requires d ≠ 0. Its
    /// roots are the inverses of the roots of the original, with the
    /// same multiplicities.
    pub fn reversed(&self) -> Result<Self> {
        CubicCoeffs::new(self.d, self.c, self.b, self.a)
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FieldElement) -> FieldElement {
        ctx.horner(&[self.d, self.c, self.b, self.a], x)
    }
}

/// 18abcd − 4b³d + b²c² − 4ac³ − 27a²d², the discriminant of the cubic.
pub fn discriminant_cubic(ctx: &FieldCtx, f: &CubicCoeffs) -> FieldElement {
    let (a, b, c, d) = (f.a, f.b, f.c, f.d);
    let m = |x, y| ctx.mul(x, y);
    let t1 = m(m(m(ctx.element(18), a), b), m(c, d));
    let t2 = m(m(ctx.element(4), m(b, m(b, b))), d);
    let t3 = m(m(b, b), m(c, c));
    let t4 = m(m(ctx.element(4), a), m(c, m(c, c)));
    let t5 = m(m(ctx.element(27), m(a, a)), m(d, d));
    ctx.sub(ctx.add(ctx.sub(t1, t2), t3), ctx.add(t4, t5))
}

/// Factorization type of a cubic over F_q:
///
/// * `delta_prime = 1`: three distinct roots in the algebraic closure
///   (nonzero discriminant),
/// * `delta_prime = 2`: a double root α₁ and a simple root α₂, both in
///   F_q, with `alpha = a(α₁ − α₂)`,
/// * `delta_prime = 3`: a triple root in F_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootProfile {
    pub delta_prime: u8,
    pub alpha: Option<FieldElement>,
}

/// Classifies the cubic by its repeated-root structure, extracting the
/// double root through gcd(f, f′) when the discriminant vanishes.
/// In characteristic 3 the discriminant degenerates and the repeated
/// case is rejected.
pub fn root_profile(ctx: &FieldCtx, f: &CubicCoeffs) -> Result<RootProfile> {
    if !discriminant_cubic(ctx, f).is_zero() {
        return Ok(RootProfile {
            delta_prime: 1,
            alpha: None,
        });
    }
    if ctx.characteristic() == 3 {
        return Err(Error::CharacteristicThree);
    }
    let poly = [f.d, f.c, f.b, f.a];
    let deriv = [
        f.c,
        ctx.mul(ctx.element(2), f.b),
        ctx.mul(ctx.element(3), f.a),
    ];
    let rem = poly_rem(ctx, &poly, &deriv);
    if rem.is_empty() {
        // f′ divides f, so the gcd is quadratic and the root is triple.
        return Ok(RootProfile {
            delta_prime: 3,
            alpha: None,
        });
    }
    if rem.len() == 2 && poly_rem(ctx, &deriv, &rem).is_empty() {
        // gcd(f, f′) is the linear factor at the double root α₁.
        let alpha1 = ctx.neg(ctx.div(rem[0], rem[1])?);
        // α₂ = −b/a − 2α₁, so a(α₁ − α₂) = 3aα₁ + b.
        let alpha = ctx.add(ctx.mul(ctx.mul(ctx.element(3), f.a), alpha1), f.b);
        return Ok(RootProfile {
            delta_prime: 2,
            alpha: Some(alpha),
        });
    }
    Err(Error::Precondition(
        "cubic has zero discriminant but gcd(f, f') is constant".into(),
    ))
}

/// Remainder of num mod den over the field, coefficients in
/// degree-ascending order, with trailing zeros stripped (an empty vector
/// is the zero remainder).
fn poly_rem(ctx: &FieldCtx, num: &[FieldElement], den: &[FieldElement]) -> Vec<FieldElement> {
    let mut rem: Vec<FieldElement> = num.to_vec();
    strip(&mut rem);
    let mut d: Vec<FieldElement> = den.to_vec();
    strip(&mut d);
    let lead = *d.last().expect("divisor must be nonzero");
    let lead_inv = ctx.inv(lead).expect("leading coefficient is nonzero");
    while rem.len() >= d.len() {
        let shift = rem.len() - d.len();
        let factor = ctx.mul(*rem.last().unwrap(), lead_inv);
        for (i, &di) in d.iter().enumerate() {
            let sub = ctx.mul(factor, di);
            rem[shift + i] = ctx.sub(rem[shift + i], sub);
        }
        strip(&mut rem);
    }
    rem
}

fn strip(poly: &mut Vec<FieldElement>) {
    while poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
}

fn qn_minus(ctx: &FieldCtx, n: u32, sub: i128) -> Result<i128> {
    let mut acc: i128 = 1;
    for _ in 0..n {
        acc = acc
            .checked_mul(ctx.size() as i128)
            .ok_or(Error::Overflow("q^n exceeds 128 bits"))?;
    }
    Ok(acc - sub)
}

fn chi2n(ctx: &FieldCtx, x: FieldElement, n: u32) -> i128 {
    quadratic_char_pow(ctx, x, n) as i128
}

fn s_n_of(ctx: &FieldCtx, cubic: &CubicCoeffs, n: u32) -> Result<i128> {
    trace_general(ctx, cubic, TraceStrategy::Auto)?.s_n(n)
}

/// Σ over x in F_{q^n} of χ₂(ax² + bx + c), for base-field coefficients
/// with a ≠ 0: −χ₂(a) when the quadratic is separable, (q^n − 1)χ₂(a)
/// when it is a perfect square times a.
pub fn quad_sum_quadratic(
    ctx: &FieldCtx,
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    n: u32,
) -> Result<i128> {
    if a.is_zero() {
        return Err(Error::Precondition(
            "quadratic character sum needs a nonzero leading coefficient".into(),
        ));
    }
    let disc = ctx.sub(ctx.mul(b, b), ctx.mul(ctx.element(4), ctx.mul(a, c)));
    if disc.is_zero() {
        Ok(qn_minus(ctx, n, 1)? * chi2n(ctx, a, n))
    } else {
        Ok(-chi2n(ctx, a, n))
    }
}

/// Σ over x in F_{q^n} of χ₂(f(x)) for a cubic f over F_q: a signed
/// eigenvalue power sum when f is separable, a single character value at
/// a(α₁ − α₂) when f has a double root, and 0 for a triple root.
pub fn quad_sum_cubic(ctx: &FieldCtx, f: &CubicCoeffs, n: u32) -> Result<i128> {
    let profile = root_profile(ctx, f)?;
    match profile.delta_prime {
        1 => Ok(-s_n_of(ctx, f, n)?),
        2 => Ok(-chi2n(
            ctx,
            profile.alpha.expect("double root carries alpha"),
            n,
        )),
        _ => Ok(0),
    }
}

/// Σ over x in F_{q^n} of χ₂(x·f(x)) for a cubic f over F_q with
/// nonzero constant term. The attached elliptic curve and double-root
/// value come from the reciprocal cubic dx³ + cx² + bx + a, whose roots
/// are the inverses of the roots of f.
pub fn quad_sum_cubic_times_x(ctx: &FieldCtx, f: &CubicCoeffs, n: u32) -> Result<i128> {
    if f.d.is_zero() {
        return Err(Error::Precondition(
            "x-weighted cubic character sum needs a nonzero constant term".into(),
        ));
    }
    let rev = f.reversed()?;
    let profile = root_profile(ctx, &rev)?;
    let tail = chi2n(ctx, f.a, n);
    match profile.delta_prime {
        1 => Ok(-s_n_of(ctx, &rev, n)? - tail),
        2 => Ok(-chi2n(ctx, profile.alpha.expect("double root carries alpha"), n) - tail),
        _ => Ok(-tail),
    }
}

/// Σ over x in F_{q^n} of (χ₄ + χ₄³)(ax² + bx + c), for q ≡ 1 (mod 4)
/// and a ≠ 0: zero for a degenerate quadratic, otherwise the signed
/// eigenvalue power sum of y² = a⁻¹x³ + dx with d = (b² − 4ac)/4a².
pub fn quartic_char_pair_sum(
    ctx: &FieldCtx,
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    n: u32,
) -> Result<i128> {
    if ctx.size() % 4 != 1 {
        return Err(Error::Precondition(
            "quartic character pair sum needs q = 1 mod 4".into(),
        ));
    }
    if a.is_zero() {
        return Err(Error::Precondition(
            "quartic character pair sum needs a nonzero leading coefficient".into(),
        ));
    }
    let disc = ctx.sub(ctx.mul(b, b), ctx.mul(ctx.element(4), ctx.mul(a, c)));
    if disc.is_zero() {
        return Ok(0);
    }
    let four_a2 = ctx.mul(ctx.element(4), ctx.mul(a, a));
    let d = ctx.div(disc, four_a2)?;
    let curve = CubicCoeffs::new(ctx.inv(a)?, ctx.zero(), d, ctx.zero())?;
    Ok(-s_n_of(ctx, &curve, n)?)
}
