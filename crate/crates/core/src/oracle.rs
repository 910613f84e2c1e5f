//! Brute-force point counts used as an independent check on the closed
//! forms.
//!
//! Every family in [`crate::families`] is, affinely, an equation of one of
//! two shapes over F_{q^n}:
//!
//! ```text
//!   y^i = f(x)              (power curve)
//!   y^i · h(x) = g(x)       (rational curve)
//! ```
//!
//! plus a fixed set of points at infinity on the projective model the
//! closed forms count. The oracle evaluates the right-hand side one x at a
//! time and adds the fiber size #{y : y^i = v}, which is gcd(i, q − 1) when
//! v is a power of that gcd and 0 otherwise (and 1 when v = 0). No
//! character identity or trace recurrence enters anywhere, so the two
//! routes share no code beyond field arithmetic.
//!
//! Counting is linear in q^n for the two structured shapes and quadratic
//! for an arbitrary [`AffineEquation::Predicate`]; a work budget caps the
//! total so a typo in a test matrix fails fast instead of spinning.

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::field::{Extension, FieldCtx, FieldElement};
use crate::frobenius::PointCount;
use rayon::prelude::*;

/// Default work budget for [`count_affine`]: enough for every field this
/// crate accepts on the structured shapes, and for predicates up to
/// q = 10^4.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Fields at least this large are counted on multiple threads.
const PARALLEL_THRESHOLD: u64 = 4096;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Number of solutions y of y^i = v, directly from the discrete log:
/// with d = gcd(i, q − 1) there are d solutions when d divides log v and
/// none otherwise; v = 0 has exactly the solution y = 0.
pub fn fiber_count(ctx: &FieldCtx, i: u32, v: FieldElement) -> u64 {
    debug_assert!(i >= 1);
    if v.is_zero() {
        return 1;
    }
    let d = gcd(u64::from(i), ctx.size() - 1);
    let l = ctx.dlog(v).expect("nonzero elements have a discrete log");
    if l.is_multiple_of(d) {
        d
    } else {
        0
    }
}

/// An affine curve in the plane over a fixed field, in the generality the
/// oracle knows how to count.
pub enum AffineEquation {
    /// y^exponent = rhs(x), coefficients in ascending degree order.
    PowerCurve {
        exponent: u32,
        rhs: Vec<FieldElement>,
    },
    /// y^exponent · den(x) = num(x). Where den(x) = 0 the equation
    /// degenerates to num(x) = 0, which either every y or no y satisfies.
    RationalCurve {
        exponent: u32,
        num: Vec<FieldElement>,
        den: Vec<FieldElement>,
    },
    /// Arbitrary pointwise test, counted over all q² pairs.
    Predicate(PointTest),
}

/// A pointwise membership test for [`AffineEquation::Predicate`].
pub type PointTest = Box<dyn Fn(&FieldCtx, FieldElement, FieldElement) -> bool + Sync + Send>;

fn fibers_for_x(ctx: &FieldCtx, eq: &AffineEquation, x: FieldElement) -> u64 {
    match eq {
        AffineEquation::PowerCurve { exponent, rhs } => {
            fiber_count(ctx, *exponent, ctx.horner(rhs, x))
        }
        AffineEquation::RationalCurve { exponent, num, den } => {
            let d = ctx.horner(den, x);
            let n = ctx.horner(num, x);
            if d.is_zero() {
                if n.is_zero() {
                    ctx.size()
                } else {
                    0
                }
            } else {
                let v = ctx.div(n, d).expect("nonzero denominator");
                fiber_count(ctx, *exponent, v)
            }
        }
        AffineEquation::Predicate(test) => {
            ctx.enumerate().filter(|&y| test(ctx, x, y)).count() as u64
        }
    }
}

/// Counts affine solutions of `eq` over the whole field by enumeration.
///
/// The work estimate is q for the structured shapes and q² for a
/// predicate; if it exceeds `budget` the count is refused.
pub fn count_affine(ctx: &FieldCtx, eq: &AffineEquation, budget: u64) -> Result<u64> {
    let q = ctx.size();
    let required = match eq {
        AffineEquation::Predicate(_) => q.saturating_mul(q),
        _ => q,
    };
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    if q >= PARALLEL_THRESHOLD {
        Ok((0..q)
            .into_par_iter()
            .map(|enc| {
                let x = ctx.from_encoding(enc).expect("encoding below field size");
                fibers_for_x(ctx, eq, x)
            })
            .sum())
    } else {
        Ok(ctx.enumerate().map(|x| fibers_for_x(ctx, eq, x)).sum())
    }
}

/// The affine model of `spec` over the degree-n extension carried by
/// `ext`, with all coefficients embedded.
pub fn equation_for(spec: &FamilySpec, ext: &Extension) -> AffineEquation {
    let f = ext.field();
    let e = |x: FieldElement| ext.embed(x);
    let asc3 = |t: &[FieldElement; 3]| vec![e(t[2]), e(t[1]), e(t[0])];
    match spec {
        FamilySpec::Y2CubicLinear { a, b, c, d, e: sh } => AffineEquation::PowerCurve {
            exponent: 2,
            rhs: f.poly_mul(&[e(*d), e(*c), e(*b), e(*a)], &[e(*sh), f.one()]),
        },
        FamilySpec::Y2SexticEven { a, b, c, d } => AffineEquation::PowerCurve {
            exponent: 2,
            rhs: vec![e(*d), f.zero(), e(*c), f.zero(), e(*b), f.zero(), e(*a)],
        },
        FamilySpec::Y2QuarticEven { a, b, c } => AffineEquation::PowerCurve {
            exponent: 2,
            rhs: vec![e(*c), f.zero(), e(*b), f.zero(), e(*a)],
        },
        FamilySpec::QuarticPairC1 {
            order,
            upper,
            lower,
        } => {
            let mut rhs = asc3(upper);
            for _ in 1..*order {
                rhs = f.poly_mul(&rhs, &asc3(lower));
            }
            AffineEquation::PowerCurve {
                exponent: *order,
                rhs,
            }
        }
        FamilySpec::QuarticPairC2 {
            order,
            upper,
            lower,
        } => AffineEquation::RationalCurve {
            exponent: *order,
            num: asc3(upper),
            den: asc3(lower),
        },
        FamilySpec::Y2QuadProduct { upper, lower } => AffineEquation::PowerCurve {
            exponent: 2,
            rhs: f.poly_mul(&asc3(upper), &asc3(lower)),
        },
        FamilySpec::Y2QuadRational { upper, lower } => AffineEquation::RationalCurve {
            exponent: 2,
            num: asc3(upper),
            den: asc3(lower),
        },
        FamilySpec::Y3LinearQuad {
            shift,
            quad,
            squared,
        } => {
            let m = f.poly_mul(&[e(*shift), f.one()], &asc3(quad));
            AffineEquation::PowerCurve {
                exponent: 3,
                rhs: if *squared { f.poly_mul(&m, &m) } else { m },
            }
        }
        FamilySpec::Y3Cubic { a, b } => AffineEquation::PowerCurve {
            exponent: 3,
            rhs: vec![e(*b), f.zero(), f.zero(), e(*a)],
        },
        FamilySpec::Y3Sextic { a, b } => AffineEquation::PowerCurve {
            exponent: 3,
            rhs: vec![
                e(*b),
                f.zero(),
                f.zero(),
                f.zero(),
                f.zero(),
                f.zero(),
                e(*a),
            ],
        },
        FamilySpec::Y4QuarticEven { a, b, c } => AffineEquation::PowerCurve {
            exponent: 4,
            rhs: vec![e(*c), f.zero(), e(*b), f.zero(), e(*a)],
        },
    }
}

/// Points at infinity on the projective model each closed form counts.
///
/// For y² against a polynomial of odd degree or a rational function there
/// is one smooth branch (two for the rational shapes, where the fiber over
/// the pole line also closes up); for y^i = ax^i + ... the branches at
/// infinity biject with the i-th roots of the leading coefficient.
pub fn infinity_constant(spec: &FamilySpec, ext: &Extension) -> u64 {
    let f = ext.field();
    match spec {
        FamilySpec::Y2CubicLinear { .. }
        | FamilySpec::Y2SexticEven { .. }
        | FamilySpec::Y2QuarticEven { .. }
        | FamilySpec::Y2QuadProduct { .. }
        | FamilySpec::QuarticPairC1 { .. }
        | FamilySpec::Y3Sextic { .. } => 1,
        FamilySpec::Y2QuadRational { .. } | FamilySpec::QuarticPairC2 { .. } => 2,
        FamilySpec::Y3LinearQuad { quad, squared, .. } => {
            if *squared {
                1
            } else {
                fiber_count(f, 3, ext.embed(quad[0]))
            }
        }
        FamilySpec::Y3Cubic { a, .. } => fiber_count(f, 3, ext.embed(*a)),
        FamilySpec::Y4QuarticEven { a, .. } => fiber_count(f, 4, ext.embed(*a)),
    }
}

/// Total oracle count for `spec` over the extension: affine solutions by
/// enumeration plus the points at infinity of the projective model.
pub fn count_total(spec: &FamilySpec, ext: &Extension, budget: u64) -> Result<PointCount> {
    let eq = equation_for(spec, ext);
    let affine = count_affine(ext.field(), &eq, budget)?;
    Ok(PointCount {
        n: ext.degree(),
        value: u128::from(affine) + u128::from(infinity_constant(spec, ext)),
    })
}
