//! Exact N_n for eleven curve families over F_{q^n}.
//!
//! Each function takes coefficients in the base field F_q and an
//! extension degree n and returns the exact number of points of the
//! curve over F_{q^n}, including its points at infinity on the plane
//! closure. The counts reduce to the character sums of [`crate::charsums`]
//! plus eigenvalue power sums, so no field larger than F_q is ever
//! constructed; the lone exception is the superelliptic pair relation,
//! which needs an order-i character of F_{q^n} itself (and, for i ≥ 3,
//! an honest enumeration of an auxiliary curve), and therefore takes a
//! prebuilt [`Extension`].
//!
//! Violated hypotheses surface as `Error::Precondition` with the
//! offending condition named, so sweep drivers can skip inadmissible
//! coefficient tuples without guessing.

use crate::characters::{char_power_sum, quadratic_char_pow};
use crate::charsums::{
    quad_sum_cubic, quad_sum_cubic_times_x, quad_sum_quadratic, root_profile, CubicCoeffs,
};
use crate::error::{Error, Result};
use crate::field::{Extension, FieldCtx, FieldElement};
pub use crate::frobenius::PointCount;
use crate::frobenius::{trace_general, FrobeniusData, TraceStrategy};

fn qn_i128(ctx: &FieldCtx, n: u32) -> Result<i128> {
    i128::try_from(ctx.size_pow(n)?).map_err(|_| Error::Overflow("q^n exceeds 127 bits"))
}

fn chi2n(ctx: &FieldCtx, x: FieldElement, n: u32) -> i128 {
    quadratic_char_pow(ctx, x, n) as i128
}

fn s_n_of(ctx: &FieldCtx, f: &CubicCoeffs, n: u32) -> Result<i128> {
    trace_general(ctx, f, TraceStrategy::Auto)?.s_n(n)
}

fn to_count(n: u32, value: i128) -> Result<PointCount> {
    Ok(PointCount {
        n,
        value: u128::try_from(value).map_err(|_| Error::Overflow("point count is negative"))?,
    })
}

fn require(cond: bool, hypothesis: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(hypothesis.into()))
    }
}

/// b² − 4ac.
fn disc2(ctx: &FieldCtx, a: FieldElement, b: FieldElement, c: FieldElement) -> FieldElement {
    ctx.sub(ctx.mul(b, b), ctx.mul(ctx.element(4), ctx.mul(a, c)))
}

/// Resultant of ax² + bx + c and Ax² + Bx + C; zero exactly when the
/// two quadratics share a root in the algebraic closure.
fn resultant2(ctx: &FieldCtx, upper: [FieldElement; 3], lower: [FieldElement; 3]) -> FieldElement {
    let [ua, ub, uc] = upper;
    let [la, lb, lc] = lower;
    let cross = ctx.sub(ctx.mul(la, uc), ctx.mul(lc, ua));
    let left = ctx.sub(ctx.mul(la, ub), ctx.mul(lb, ua));
    let right = ctx.sub(ctx.mul(lb, uc), ctx.mul(lc, ub));
    ctx.sub(ctx.mul(cross, cross), ctx.mul(left, right))
}

/// N_n of y² = (ax³ + bx² + cx + d)(x + e).
///
/// Shifting x by −e turns the right side into x times a cubic, so the
/// count is q^n + 1 plus the x-weighted cubic character sum, with the
/// degenerate shifted-constant-term cases reducing to a quadratic sum.
pub fn count_y2_cubic_linear(
    ctx: &FieldCtx,
    f: &CubicCoeffs,
    e: FieldElement,
    n: u32,
) -> Result<PointCount> {
    let (a, b, c, d) = (f.a, f.b, f.c, f.d);
    let e2 = ctx.mul(e, e);
    let e3 = ctx.mul(e2, e);
    let b1 = ctx.sub(b, ctx.mul(ctx.element(3), ctx.mul(a, e)));
    let c1 = ctx.add(
        ctx.sub(
            ctx.mul(ctx.element(3), ctx.mul(a, e2)),
            ctx.mul(ctx.element(2), ctx.mul(b, e)),
        ),
        c,
    );
    let d1 = ctx.add(
        ctx.sub(d, ctx.mul(a, e3)),
        ctx.sub(ctx.mul(b, e2), ctx.mul(c, e)),
    );
    let qn = qn_i128(ctx, n)?;
    let total = if !d1.is_zero() {
        let shifted = CubicCoeffs::new(a, b1, c1, d1)?;
        qn + 1 + quad_sum_cubic_times_x(ctx, &shifted, n)?
    } else {
        // Right side is x²(ax² + b₁x + c₁): drop the square, subtract
        // the x = 0 term of the quadratic sum.
        qn + 1 + quad_sum_quadratic(ctx, a, b1, c1, n)? - chi2n(ctx, c1, n)
    };
    to_count(n, total)
}

/// N_n of y² = ax⁶ + bx⁴ + cx² + d.
pub fn count_y2_sextic_even(
    ctx: &FieldCtx,
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    d: FieldElement,
    n: u32,
) -> Result<PointCount> {
    let f = CubicCoeffs::new(a, b, c, d)?;
    let qn = qn_i128(ctx, n)?;
    let total = if !d.is_zero() {
        let profile = root_profile(ctx, &f)?;
        let rev = f.reversed()?;
        match profile.delta_prime {
            1 => qn + 1 - s_n_of(ctx, &f, n)? - s_n_of(ctx, &rev, n)? - chi2n(ctx, a, n),
            2 => {
                let alpha = profile.alpha.expect("double root carries alpha");
                let alpha_rev = root_profile(ctx, &rev)?
                    .alpha
                    .expect("reciprocal cubic shares the multiplicity pattern");
                qn + 1 - chi2n(ctx, alpha, n) - chi2n(ctx, alpha_rev, n) - chi2n(ctx, a, n)
            }
            _ => qn + 1 - chi2n(ctx, a, n),
        }
    } else {
        let dd = disc2(ctx, a, b, c);
        let g = CubicCoeffs::new(a, b, c, ctx.zero())?;
        if !c.is_zero() && !dd.is_zero() {
            qn + 1 - s_n_of(ctx, &g, n)? - chi2n(ctx, a, n) - chi2n(ctx, c, n)
        } else if dd.is_zero() {
            let profile = root_profile(ctx, &g)?;
            let alpha_term = match profile.delta_prime {
                2 => chi2n(ctx, profile.alpha.expect("double root carries alpha"), n),
                _ => 0,
            };
            qn + 1 - alpha_term + (qn - 1) * chi2n(ctx, a, n) - chi2n(ctx, c, n)
        } else {
            // c = d = 0 with b ≠ 0: the cubic x(ax² + bx) has the
            // double root 0, so the profile value is b itself.
            let alpha = root_profile(ctx, &g)?
                .alpha
                .expect("double root carries alpha");
            qn + 1 - chi2n(ctx, alpha, n) - chi2n(ctx, a, n)
        }
    };
    to_count(n, total)
}

/// N_n of y² = ax⁴ + bx² + c.
pub fn count_y2_quartic_even(
    ctx: &FieldCtx,
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    n: u32,
) -> Result<PointCount> {
    require(!a.is_zero(), "leading coefficient a is zero")?;
    let qn = qn_i128(ctx, n)?;
    let dd = disc2(ctx, a, b, c);
    let total = if !dd.is_zero() {
        if !c.is_zero() {
            let g = CubicCoeffs::new(a, b, c, ctx.zero())?;
            qn + 1 - s_n_of(ctx, &g, n)? - chi2n(ctx, a, n)
        } else {
            qn + 1 - chi2n(ctx, b, n) - chi2n(ctx, a, n)
        }
    } else {
        // b² = 4ac: the right side is a(x² + b/2a)².
        let neg_half_b = ctx.neg(ctx.div(b, ctx.element(2))?);
        if !c.is_zero() {
            qn + 1 - chi2n(ctx, neg_half_b, n) + (qn - 1) * chi2n(ctx, a, n)
        } else {
            // b = c = 0: y² = ax⁴.
            qn + 1 + (qn - 1) * chi2n(ctx, a, n)
        }
    };
    to_count(n, total)
}

/// Shared transform for the two-quadratics families: from
/// g = Ax² + Bx + C over f = ax² + bx + c, produce the coefficients
/// (a₁, b₁, c₁) = (b² − 4ac, 4Ac + 4Ca − 2Bb, B² − 4AC) of the
/// auxiliary even quartic and the ratio A/a.
fn quad_pair_transform(
    ctx: &FieldCtx,
    upper: [FieldElement; 3],
    lower: [FieldElement; 3],
) -> Result<(FieldElement, FieldElement, FieldElement, FieldElement)> {
    let [ua, ub, uc] = upper;
    let [la, lb, lc] = lower;
    require(
        !ua.is_zero(),
        "upper quadratic has zero leading coefficient",
    )?;
    require(
        !la.is_zero(),
        "lower quadratic has zero leading coefficient",
    )?;
    require(
        !resultant2(ctx, upper, lower).is_zero(),
        "the two quadratics share a root",
    )?;
    let a1 = disc2(ctx, la, lb, lc);
    let c1 = disc2(ctx, ua, ub, uc);
    let four = ctx.element(4);
    let b1 = ctx.sub(
        ctx.add(
            ctx.mul(four, ctx.mul(ua, lc)),
            ctx.mul(four, ctx.mul(uc, la)),
        ),
        ctx.mul(ctx.element(2), ctx.mul(ub, lb)),
    );
    let ratio = ctx.div(ua, la)?;
    Ok((a1, b1, c1, ratio))
}

fn quad_pair_core(
    ctx: &FieldCtx,
    a1: FieldElement,
    b1: FieldElement,
    c1: FieldElement,
    ratio: FieldElement,
    n: u32,
) -> Result<i128> {
    let qn = qn_i128(ctx, n)?;
    let dd = disc2(ctx, a1, b1, c1);
    if !dd.is_zero() {
        let g = CubicCoeffs::new(a1, b1, c1, ctx.zero())?;
        Ok(-s_n_of(ctx, &g, n)? - chi2n(ctx, a1, n) - chi2n(ctx, ratio, n))
    } else {
        let g = CubicCoeffs::new(a1, b1, c1, ctx.zero())?;
        let alpha = root_profile(ctx, &g)?
            .alpha
            .expect("b₁² = 4a₁c₁ with c₁ ≠ 0 gives a double root");
        Ok(-chi2n(ctx, alpha, n) + (qn - 1) * chi2n(ctx, a1, n) - chi2n(ctx, ratio, n))
    }
}

/// N_n of y² = (ax² + bx + c)(Ax² + Bx + C) for separable quadratics
/// with no common root.
pub fn count_y2_quad_product(
    ctx: &FieldCtx,
    upper: [FieldElement; 3],
    lower: [FieldElement; 3],
    n: u32,
) -> Result<PointCount> {
    let (a1, b1, c1, ratio) = quad_pair_transform(ctx, upper, lower)?;
    require(!a1.is_zero(), "lower quadratic is degenerate (b² = 4ac)")?;
    require(!c1.is_zero(), "upper quadratic is degenerate (B² = 4AC)")?;
    let qn = qn_i128(ctx, n)?;
    // Roots of the lower quadratic contribute affine points exactly
    // when its discriminant a₁ is a square in F_{q^n}.
    let gamma = if chi2n(ctx, a1, n) == 1 { 2 } else { 0 };
    to_count(n, qn + gamma + quad_pair_core(ctx, a1, b1, c1, ratio, n)?)
}

/// N_n of y²(ax² + bx + c) = Ax² + Bx + C for separable quadratics with
/// no common root, counting both points at infinity.
pub fn count_y2_quad_rational(
    ctx: &FieldCtx,
    upper: [FieldElement; 3],
    lower: [FieldElement; 3],
    n: u32,
) -> Result<PointCount> {
    let (a1, b1, c1, ratio) = quad_pair_transform(ctx, upper, lower)?;
    require(!a1.is_zero(), "lower quadratic is degenerate (b² = 4ac)")?;
    require(!c1.is_zero(), "upper quadratic is degenerate (B² = 4AC)")?;
    let qn = qn_i128(ctx, n)?;
    to_count(n, qn + 1 + quad_pair_core(ctx, a1, b1, c1, ratio, n)?)
}

/// N_n of the superelliptic pair attached to g = Ax² + Bx + C and
/// f = ax² + bx + c for a character order i | q^n − 1:
///
/// * first curve: y^i = g(x)·f(x)^{i−1},
/// * second curve: y^i·f(x) = g(x),
///
/// both counted with their points at infinity. The two counts differ by
/// a constant, so they are produced together from one auxiliary curve
/// z² = a₁y^{2i} + b₁y^i + c₁, which has a closed form for i ≤ 2 and is
/// enumerated over F_{q^n} otherwise.
pub fn count_quartic_pair(
    ext: &Extension,
    order: u32,
    upper: [FieldElement; 3],
    lower: [FieldElement; 3],
) -> Result<(PointCount, PointCount)> {
    if !(1..=4).contains(&order) {
        return Err(Error::BadCharacterOrder(order));
    }
    let ctx = ext.base();
    let n = ext.degree();
    let qn_size = ext.field().size();
    if !(qn_size - 1).is_multiple_of(order as u64) {
        return Err(Error::OrderDoesNotDivide {
            order,
            size: qn_size,
        });
    }
    let [ua, ub, uc] = upper;
    let [la, lb, lc] = lower;
    require(
        !ua.is_zero(),
        "upper quadratic has zero leading coefficient",
    )?;
    require(
        !la.is_zero(),
        "lower quadratic has zero leading coefficient",
    )?;
    require(
        !resultant2(ctx, upper, lower).is_zero(),
        "the two quadratics share a root",
    )?;
    let a1 = disc2(ctx, la, lb, lc);
    let c1 = disc2(ctx, ua, ub, uc);
    let four = ctx.element(4);
    let b1 = ctx.sub(
        ctx.add(
            ctx.mul(four, ctx.mul(ua, lc)),
            ctx.mul(four, ctx.mul(uc, la)),
        ),
        ctx.mul(ctx.element(2), ctx.mul(ub, lb)),
    );

    // Points at infinity of the auxiliary curve.
    let delta: i128 = if order == 1 {
        1 + chi2n(ctx, a1, n)
    } else if order == 2 && a1.is_zero() {
        1 + chi2n(ctx, b1, n)
    } else {
        1
    };
    // Affine points of the first curve above the roots of f.
    let gamma: i128 = if a1.is_zero() {
        1
    } else if chi2n(ctx, a1, n) == 1 {
        2
    } else {
        0
    };
    // Σ_{j=1}^{i−1} χ_i^j(A/a) over F_{q^n}; through the base field
    // when the order already divides q − 1, natively otherwise.
    let ratio = ctx.div(ua, la)?;
    let sigma: i128 = if (ctx.size() - 1).is_multiple_of(order as u64) {
        char_power_sum(ctx, order, ratio, n)? as i128
    } else {
        char_power_sum(ext.field(), order, ext.embed(ratio), 1)? as i128
    };

    let aux_affine = aux_affine_count(ext, order, a1, b1, c1)?;
    let aux_total = aux_affine + delta;
    let first = aux_total - sigma - delta + gamma;
    let second = aux_total + 1 - sigma - delta;
    Ok((to_count(n, first)?, to_count(n, second)?))
}

/// Affine points of z² = a₁y^{2i} + b₁y^i + c₁ over F_{q^n}.
fn aux_affine_count(
    ext: &Extension,
    order: u32,
    a1: FieldElement,
    b1: FieldElement,
    c1: FieldElement,
) -> Result<i128> {
    let ctx = ext.base();
    let n = ext.degree();
    let qn = qn_i128(ctx, n)?;
    if order > 2 {
        let fq = ext.field();
        let (ea, eb, ec) = (ext.embed(a1), ext.embed(b1), ext.embed(c1));
        let mut acc: i128 = 0;
        for y in fq.enumerate() {
            let yi = fq.pow(y, order as u64);
            let v = fq.add(fq.mul(ea, fq.mul(yi, yi)), fq.add(fq.mul(eb, yi), ec));
            acc += if v.is_zero() {
                1
            } else if fq.dlog(v).expect("nonzero").is_multiple_of(2) {
                2
            } else {
                0
            };
        }
        return Ok(acc);
    }
    if !a1.is_zero() {
        if order == 1 {
            Ok(qn + quad_sum_quadratic(ctx, a1, b1, c1, n)?)
        } else {
            Ok(count_y2_quartic_even(ctx, a1, b1, c1, n)?.value as i128 - 1)
        }
    } else if !b1.is_zero() {
        if order == 1 {
            // z² = b₁y + c₁: one y per z.
            Ok(qn)
        } else {
            Ok(qn + quad_sum_quadratic(ctx, b1, ctx.zero(), c1, n)?)
        }
    } else {
        // a₁ = b₁ = 0 forces c₁ ≠ 0: two distinct double roots would
        // make b₁ = 4Aa(r − s)² ≠ 0.
        Ok(qn * (1 + chi2n(ctx, c1, n)))
    }
}

/// N_n of the two cubic-power curves attached to the shift a and the
/// quadratic g = Ax² + Bx + C over a field with q ≡ 1 (mod 3):
///
/// * first: y³ = (x + a)·g(x),
/// * second: y³ = (x + a)²·g(x)²,
///
/// returned in that order, each including its points at infinity. The
/// second count is the first minus the χ₃-pair value at A.
pub fn count_y3_linear_quad(
    ctx: &FieldCtx,
    shift: FieldElement,
    quad: [FieldElement; 3],
    n: u32,
) -> Result<(PointCount, PointCount)> {
    require(ctx.size() % 3 == 1, "field size is not 1 mod 3")?;
    let [qa, qb, qc] = quad;
    require(!qa.is_zero(), "quadratic has zero leading coefficient")?;
    let at_root = ctx.add(
        ctx.sub(ctx.mul(qa, ctx.mul(shift, shift)), ctx.mul(qb, shift)),
        qc,
    );
    require(
        !at_root.is_zero(),
        "quadratic vanishes at the root of the linear factor",
    )?;
    let a1 = ctx.mul(ctx.element(4), at_root);
    let c1 = disc2(ctx, qa, qb, qc);
    let qn = qn_i128(ctx, n)?;
    let cubic = CubicCoeffs::new(a1, ctx.zero(), ctx.zero(), c1)?;
    let first = qn + 1 + quad_sum_cubic(ctx, &cubic, n)?;
    let second = first - char_power_sum(ctx, 3, qa, n)? as i128;
    Ok((to_count(n, first)?, to_count(n, second)?))
}

/// N_n of y³ = ax³ + b over a field with q ≡ 1 (mod 3): the affine
/// points match those of z² = a⁻¹w³ + (b/2a)², an elliptic curve, and
/// there are as many points at infinity as cube roots of a.
pub fn count_y3_cubic(
    ctx: &FieldCtx,
    a: FieldElement,
    b: FieldElement,
    n: u32,
) -> Result<PointCount> {
    require(ctx.size() % 3 == 1, "field size is not 1 mod 3")?;
    require(!a.is_zero(), "coefficient a is zero")?;
    require(!b.is_zero(), "coefficient b is zero")?;
    let t = ctx.div(b, ctx.mul(ctx.element(2), a))?;
    let curve = CubicCoeffs::new(ctx.inv(a)?, ctx.zero(), ctx.zero(), ctx.mul(t, t))?;
    let qn = qn_i128(ctx, n)?;
    to_count(n, qn + 1 - s_n_of(ctx, &curve, n)?)
}

/// N_n of y³ = ax⁶ + b over a field with q ≡ 1 (mod 3): four elliptic
/// traces plus the χ₃-pair value at a.
pub fn count_y3_sextic(
    ctx: &FieldCtx,
    a: FieldElement,
    b: FieldElement,
    n: u32,
) -> Result<PointCount> {
    require(ctx.size() % 3 == 1, "field size is not 1 mod 3")?;
    require(!a.is_zero(), "coefficient a is zero")?;
    require(!b.is_zero(), "coefficient b is zero")?;
    let zero = ctx.zero();
    let m4ab = ctx.neg(ctx.mul(ctx.element(4), ctx.mul(a, b)));
    let curves = [
        CubicCoeffs::new(ctx.inv(a)?, zero, zero, ctx.neg(ctx.div(b, a)?))?,
        CubicCoeffs::new(ctx.inv(b)?, zero, zero, ctx.neg(ctx.div(a, b)?))?,
        CubicCoeffs::new(ctx.one(), zero, zero, m4ab)?,
        CubicCoeffs::new(m4ab, zero, zero, ctx.one())?,
    ];
    let mut total = qn_i128(ctx, n)? + 1;
    for curve in &curves {
        total -= s_n_of(ctx, curve, n)?;
    }
    total -= char_power_sum(ctx, 3, a, n)? as i128;
    to_count(n, total)
}

/// N_n of y⁴ = ax⁴ + bx² + c. For q ≡ 1 (mod 4) the count is a sum of
/// three elliptic traces; for a prime field with p ≡ 3 (mod 4) two of
/// them collapse to the supersingular trace 0. A base field of size
/// 3 mod 4 with k > 1 has no closed form here.
pub fn count_y4_quartic_even(
    ctx: &FieldCtx,
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    n: u32,
) -> Result<PointCount> {
    require(!a.is_zero(), "leading coefficient a is zero")?;
    let qn = qn_i128(ctx, n)?;
    let dd = disc2(ctx, a, b, c);
    let four = ctx.element(4);
    if ctx.size() % 4 != 1 && ctx.extension_degree() > 1 {
        return Err(Error::Precondition(
            "no closed form when q = 3 mod 4 and k > 1".into(),
        ));
    }
    let total = if !dd.is_zero() && !c.is_zero() {
        let main = CubicCoeffs::new(a, b, c, ctx.zero())?;
        let side = if ctx.size() % 4 == 1 {
            let d1 = ctx.div(dd, ctx.mul(four, ctx.mul(a, a)))?;
            let d2 = ctx.div(dd, ctx.mul(four, ctx.mul(c, c)))?;
            let w1 = CubicCoeffs::new(ctx.inv(a)?, ctx.zero(), d1, ctx.zero())?;
            let w2 = CubicCoeffs::new(ctx.inv(c)?, ctx.zero(), d2, ctx.zero())?;
            s_n_of(ctx, &w1, n)? + s_n_of(ctx, &w2, n)?
        } else {
            2 * FrobeniusData::new(ctx.size(), 0)?.s_n(n)?
        };
        qn + 1 - side - s_n_of(ctx, &main, n)?
    } else if !dd.is_zero() {
        // c = 0, so b ≠ 0.
        let side = if ctx.size() % 4 == 1 {
            let d1 = ctx.div(dd, ctx.mul(four, ctx.mul(a, a)))?;
            let w1 = CubicCoeffs::new(ctx.inv(a)?, ctx.zero(), d1, ctx.zero())?;
            s_n_of(ctx, &w1, n)?
        } else {
            FrobeniusData::new(ctx.size(), 0)?.s_n(n)?
        };
        qn + 1 - side - chi2n(ctx, b, n)
    } else if !c.is_zero() {
        let neg_half_b = ctx.neg(ctx.div(b, ctx.element(2))?);
        qn + 1 - chi2n(ctx, neg_half_b, n) + qn * chi2n(ctx, a, n)
    } else {
        // b² = 4ac with c = 0 forces b = 0: y⁴ = ax⁴, so every fiber over
        // x ≠ 0 has as many points as there are fourth roots of a. The
        // χ₄-power sum handles q ≡ 1 (mod 4); over a prime field with
        // p ≡ 3 (mod 4) fourth powers are the squares for odd n and the
        // whole unit group for even n.
        let sigma: i128 = if ctx.size() % 4 == 1 {
            i128::from(char_power_sum(ctx, 4, a, n)?)
        } else if n % 2 == 1 {
            chi2n(ctx, a, n)
        } else {
            3
        };
        qn + 1 + qn * sigma
    };
    to_count(n, total)
}

/// A curve family instance: the data the CLI and the oracle share.
/// Coefficients are elements of the base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// y² = (ax³ + bx² + cx + d)(x + e).
    Y2CubicLinear {
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
        d: FieldElement,
        e: FieldElement,
    },
    /// y² = ax⁶ + bx⁴ + cx² + d.
    Y2SexticEven {
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
        d: FieldElement,
    },
    /// y² = ax⁴ + bx² + c.
    Y2QuarticEven {
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
    },
    /// y^i = (Ax² + Bx + C)(ax² + bx + c)^{i−1}.
    QuarticPairC1 {
        order: u32,
        upper: [FieldElement; 3],
        lower: [FieldElement; 3],
    },
    /// y^i (ax² + bx + c) = Ax² + Bx + C.
    QuarticPairC2 {
        order: u32,
        upper: [FieldElement; 3],
        lower: [FieldElement; 3],
    },
    /// y² = (ax² + bx + c)(Ax² + Bx + C).
    Y2QuadProduct {
        upper: [FieldElement; 3],
        lower: [FieldElement; 3],
    },
    /// y² (ax² + bx + c) = Ax² + Bx + C.
    Y2QuadRational {
        upper: [FieldElement; 3],
        lower: [FieldElement; 3],
    },
    /// y³ = (x + a)(Ax² + Bx + C), squared = false, or its square
    /// y³ = (x + a)²(Ax² + Bx + C)², squared = true.
    Y3LinearQuad {
        shift: FieldElement,
        quad: [FieldElement; 3],
        squared: bool,
    },
    /// y³ = ax³ + b.
    Y3Cubic { a: FieldElement, b: FieldElement },
    /// y³ = ax⁶ + b.
    Y3Sextic { a: FieldElement, b: FieldElement },
    /// y⁴ = ax⁴ + bx² + c.
    Y4QuarticEven {
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
    },
}

impl FamilySpec {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Y2CubicLinear { .. } => "y2-cubic-linear",
            FamilySpec::Y2SexticEven { .. } => "y2-sextic-even",
            FamilySpec::Y2QuarticEven { .. } => "y2-quartic-even",
            FamilySpec::QuarticPairC1 { .. } => "quartic-pair-c1",
            FamilySpec::QuarticPairC2 { .. } => "quartic-pair-c2",
            FamilySpec::Y2QuadProduct { .. } => "y2-quad-product",
            FamilySpec::Y2QuadRational { .. } => "y2-quad-rational",
            FamilySpec::Y3LinearQuad { .. } => "y3-linear-quad",
            FamilySpec::Y3Cubic { .. } => "y3-cubic",
            FamilySpec::Y3Sextic { .. } => "y3-sextic",
            FamilySpec::Y4QuarticEven { .. } => "y4-quartic-even",
        }
    }

    /// Distinguishes the paired curves the y³ linear-quad family
    /// produces from one coefficient tuple.
    pub fn curve_label(&self) -> Option<&'static str> {
        match self {
            FamilySpec::Y3LinearQuad { squared: false, .. } => Some("c1"),
            FamilySpec::Y3LinearQuad { squared: true, .. } => Some("c2"),
            _ => None,
        }
    }

    /// The closed-form count over F_{q^n}, reusing a prebuilt extension
    /// when the family needs one.
    pub fn closed_count_with(
        &self,
        ctx: &FieldCtx,
        n: u32,
        ext: Option<&Extension>,
    ) -> Result<PointCount> {
        let pair = |order: u32,
                    upper: [FieldElement; 3],
                    lower: [FieldElement; 3]|
         -> Result<(PointCount, PointCount)> {
            match ext {
                Some(e) => {
                    debug_assert_eq!(e.degree(), n);
                    count_quartic_pair(e, order, upper, lower)
                }
                None => count_quartic_pair(&Extension::new(ctx, n)?, order, upper, lower),
            }
        };
        match *self {
            FamilySpec::Y2CubicLinear { a, b, c, d, e } => {
                count_y2_cubic_linear(ctx, &CubicCoeffs::new(a, b, c, d)?, e, n)
            }
            FamilySpec::Y2SexticEven { a, b, c, d } => count_y2_sextic_even(ctx, a, b, c, d, n),
            FamilySpec::Y2QuarticEven { a, b, c } => count_y2_quartic_even(ctx, a, b, c, n),
            FamilySpec::QuarticPairC1 {
                order,
                upper,
                lower,
            } => Ok(pair(order, upper, lower)?.0),
            FamilySpec::QuarticPairC2 {
                order,
                upper,
                lower,
            } => Ok(pair(order, upper, lower)?.1),
            FamilySpec::Y2QuadProduct { upper, lower } => {
                count_y2_quad_product(ctx, upper, lower, n)
            }
            FamilySpec::Y2QuadRational { upper, lower } => {
                count_y2_quad_rational(ctx, upper, lower, n)
            }
            FamilySpec::Y3LinearQuad {
                shift,
                quad,
                squared,
            } => {
                let (first, second) = count_y3_linear_quad(ctx, shift, quad, n)?;
                Ok(if squared { second } else { first })
            }
            FamilySpec::Y3Cubic { a, b } => count_y3_cubic(ctx, a, b, n),
            FamilySpec::Y3Sextic { a, b } => count_y3_sextic(ctx, a, b, n),
            FamilySpec::Y4QuarticEven { a, b, c } => count_y4_quartic_even(ctx, a, b, c, n),
        }
    }

    pub fn closed_count(&self, ctx: &FieldCtx, n: u32) -> Result<PointCount> {
        self.closed_count_with(ctx, n, None)
    }

    /// Coefficient names for a family tag, in the order the CLI and the
    /// sweep syntax expect them.
    pub fn coeff_names(tag: &str) -> Result<&'static [&'static str]> {
        Ok(match tag {
            "y2-cubic-linear" => &["a", "b", "c", "d", "e"],
            "y2-sextic-even" => &["a", "b", "c", "d"],
            "y2-quartic-even" | "y4-quartic-even" => &["a", "b", "c"],
            "quartic-pair-c1" | "quartic-pair-c2" | "y2-quad-product" | "y2-quad-rational" => {
                &["A", "B", "C", "a", "b", "c"]
            }
            "y3-linear-quad" => &["a", "A", "B", "C"],
            "y3-cubic" | "y3-sextic" => &["a", "b"],
            _ => {
                return Err(Error::Precondition(format!("unknown family tag `{tag}`")));
            }
        })
    }

    /// Builds the specs for a family tag from integer coefficients; the
    /// y³ linear-quad tag yields both of its paired curves.
    pub fn parse(
        ctx: &FieldCtx,
        tag: &str,
        coeffs: &[i64],
        char_order: Option<u32>,
    ) -> Result<Vec<FamilySpec>> {
        let el: Vec<FieldElement> = coeffs.iter().map(|&v| ctx.element(v)).collect();
        FamilySpec::from_elements(tag, &el, char_order)
    }

    /// Builds the specs for `tag` from already-resolved field elements,
    /// one spec per curve the tag describes.
    pub fn from_elements(
        tag: &str,
        el: &[FieldElement],
        char_order: Option<u32>,
    ) -> Result<Vec<FamilySpec>> {
        let names = FamilySpec::coeff_names(tag)?;
        if el.len() != names.len() {
            return Err(Error::Precondition(format!(
                "family `{tag}` takes {} coefficients ({}), got {}",
                names.len(),
                names.join(","),
                el.len()
            )));
        }
        let order = match tag {
            "quartic-pair-c1" | "quartic-pair-c2" => char_order.ok_or_else(|| {
                Error::Precondition("quartic-pair families need --char-order".into())
            })?,
            _ => {
                if char_order.is_some() {
                    return Err(Error::Precondition(format!(
                        "family `{tag}` does not take a character order"
                    )));
                }
                0
            }
        };
        Ok(match tag {
            "y2-cubic-linear" => vec![FamilySpec::Y2CubicLinear {
                a: el[0],
                b: el[1],
                c: el[2],
                d: el[3],
                e: el[4],
            }],
            "y2-sextic-even" => vec![FamilySpec::Y2SexticEven {
                a: el[0],
                b: el[1],
                c: el[2],
                d: el[3],
            }],
            "y2-quartic-even" => vec![FamilySpec::Y2QuarticEven {
                a: el[0],
                b: el[1],
                c: el[2],
            }],
            "quartic-pair-c1" => vec![FamilySpec::QuarticPairC1 {
                order,
                upper: [el[0], el[1], el[2]],
                lower: [el[3], el[4], el[5]],
            }],
            "quartic-pair-c2" => vec![FamilySpec::QuarticPairC2 {
                order,
                upper: [el[0], el[1], el[2]],
                lower: [el[3], el[4], el[5]],
            }],
            "y2-quad-product" => vec![FamilySpec::Y2QuadProduct {
                upper: [el[0], el[1], el[2]],
                lower: [el[3], el[4], el[5]],
            }],
            "y2-quad-rational" => vec![FamilySpec::Y2QuadRational {
                upper: [el[0], el[1], el[2]],
                lower: [el[3], el[4], el[5]],
            }],
            "y3-linear-quad" => vec![
                FamilySpec::Y3LinearQuad {
                    shift: el[0],
                    quad: [el[1], el[2], el[3]],
                    squared: false,
                },
                FamilySpec::Y3LinearQuad {
                    shift: el[0],
                    quad: [el[1], el[2], el[3]],
                    squared: true,
                },
            ],
            "y3-cubic" => vec![FamilySpec::Y3Cubic { a: el[0], b: el[1] }],
            "y3-sextic" => vec![FamilySpec::Y3Sextic { a: el[0], b: el[1] }],
            "y4-quartic-even" => vec![FamilySpec::Y4QuarticEven {
                a: el[0],
                b: el[1],
                c: el[2],
            }],
            _ => unreachable!("tag validated by coeff_names"),
        })
    }
}
