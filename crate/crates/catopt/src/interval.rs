//! Closed intervals over the extended reals with certified outward rounding.
//!
//! An [`Interval`] is a set `{x : lo <= x <= hi}` of real numbers; `lo = -inf`
//! and `hi = +inf` denote half-open rays and the whole line. The empty set is
//! the canonical pair `(+inf, -inf)`; no NaN endpoint is ever stored.
//!
//! Every arithmetic operation returns an enclosure of the exact result set:
//! each computed endpoint is kept when it is exactly the real endpoint and
//! stepped one float outward otherwise. Exactness and the stepping direction
//! are decided by error-free transforms (2Sum for addition, an fma residual
//! for multiplication, division and square root) with an exact big-integer
//! sign comparison as the fallback in the subnormal range and for integer
//! powers and roots. Endpoints of enclosures are therefore never more than
//! one ulp away from the exact endpoint, and results whose exact endpoints
//! are representable (all boxes in the bundled regression data) come out
//! bit-exact.

use std::cmp::Ordering;
use std::fmt;

// ---------------------------------------------------------------------------
// exact sign tests
// ---------------------------------------------------------------------------

mod exact {
    use num_bigint::BigInt;
    use std::cmp::Ordering;

    /// Decomposes a finite float into `(mantissa, exponent)` with
    /// `value = mantissa * 2^exponent`.
    fn decompose(x: f64) -> (i64, i32) {
        debug_assert!(x.is_finite());
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i32;
        let frac = (bits & ((1u64 << 52) - 1)) as i64;
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1 << 52), biased - 1075)
        };
        (if neg { -m } else { m }, e)
    }

    /// Compares two exact scaled integers `a * 2^ea` and `b * 2^eb`.
    fn cmp_scaled(a: BigInt, ea: i64, b: BigInt, eb: i64) -> Ordering {
        if ea >= eb {
            (a << (ea - eb) as u64).cmp(&b)
        } else {
            a.cmp(&(b << (eb - ea) as u64))
        }
    }

    /// Sign of `a * b - c`, computed exactly. All arguments finite.
    pub fn cmp_prod(a: f64, b: f64, c: f64) -> Ordering {
        let (ma, ea) = decompose(a);
        let (mb, eb) = decompose(b);
        let (mc, ec) = decompose(c);
        let prod = BigInt::from(ma) * BigInt::from(mb);
        cmp_scaled(prod, ea as i64 + eb as i64, BigInt::from(mc), ec as i64)
    }

    /// Sign of `t^k - x`, computed exactly. `t` and `x` finite, `k >= 1`.
    pub fn cmp_pow(t: f64, k: u32, x: f64) -> Ordering {
        let (mt, et) = decompose(t);
        let (mx, ex) = decompose(x);
        let p = BigInt::from(mt).pow(k);
        cmp_scaled(p, et as i64 * k as i64, BigInt::from(mx), ex as i64)
    }
}

// ---------------------------------------------------------------------------
// directed endpoint arithmetic
// ---------------------------------------------------------------------------

/// True result is at or above the computed value: step up for an upper bound.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    Down,
    Up,
}

fn step(v: f64, d: Dir) -> f64 {
    match d {
        Dir::Down => v.next_down(),
        Dir::Up => v.next_up(),
    }
}

/// Resolves a computed endpoint given the sign of `exact - computed`.
fn settle(computed: f64, err: Ordering, d: Dir) -> f64 {
    match (err, d) {
        (Ordering::Equal, _) => computed,
        (Ordering::Less, Dir::Down) => step(computed, Dir::Down),
        (Ordering::Less, Dir::Up) => computed,
        (Ordering::Greater, Dir::Down) => computed,
        (Ordering::Greater, Dir::Up) => step(computed, Dir::Up),
    }
}

fn sign_ord(x: f64) -> Ordering {
    if x > 0.0 {
        Ordering::Greater
    } else if x < 0.0 {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Sign of `a * b - c` for finite arguments. The fma residual has the true
/// sign whenever it is nonzero (rounding to nearest never crosses zero); a
/// zero residual may hide a value too small to represent, so that one case
/// is decided with exact integer arithmetic.
fn prod_cmp(a: f64, b: f64, c: f64) -> Ordering {
    let t = a.mul_add(b, -c);
    if t > 0.0 {
        Ordering::Greater
    } else if t < 0.0 {
        Ordering::Less
    } else {
        exact::cmp_prod(a, b, c)
    }
}

/// Directed sum of two endpoints. Infinite inputs pass through; an
/// overflowing finite sum collapses to MAX/-MAX on the inward side.
fn add_dir(a: f64, b: f64, d: Dir) -> f64 {
    debug_assert!(!(a.is_infinite() && b.is_infinite() && a != b));
    let s = a + b;
    if s.is_infinite() {
        if a.is_infinite() || b.is_infinite() {
            return s;
        }
        return match d {
            Dir::Down if s > 0.0 => f64::MAX,
            Dir::Up if s < 0.0 => f64::MIN,
            _ => s,
        };
    }
    // 2Sum residual: exact for every finite rounded sum.
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    settle(s, sign_ord(err), d)
}

fn sub_dir(a: f64, b: f64, d: Dir) -> f64 {
    add_dir(a, -b, d)
}

/// Directed product of two endpoints with the `0 * inf = 0` convention of
/// set-based interval arithmetic.
fn mul_dir(a: f64, b: f64, d: Dir) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if p.is_infinite() {
        if a.is_infinite() || b.is_infinite() {
            return p;
        }
        return match d {
            Dir::Down if p > 0.0 => f64::MAX,
            Dir::Up if p < 0.0 => f64::MIN,
            _ => p,
        };
    }
    if p == 0.0 {
        // Total underflow: only the sign of the true product survives.
        let pos = (a > 0.0) == (b > 0.0);
        return match (pos, d) {
            (true, Dir::Up) => f64::from_bits(1),
            (false, Dir::Down) => -f64::from_bits(1),
            _ => 0.0,
        };
    }
    settle(p, prod_cmp(a, b, p), d)
}

/// Directed quotient of two endpoints; the divisor is never zero here
/// (zero-straddling divisors are handled by interval division).
fn div_dir(a: f64, b: f64, d: Dir) -> f64 {
    debug_assert!(b != 0.0);
    if a == 0.0 {
        return 0.0;
    }
    if a.is_infinite() {
        if b.is_infinite() {
            // Neutral candidate: real corner pairs are covered by the
            // finite-endpoint corners of the 4-corner scan.
            return match d {
                Dir::Down => f64::INFINITY,
                Dir::Up => f64::NEG_INFINITY,
            };
        }
        return if (a > 0.0) == (b > 0.0) { f64::INFINITY } else { f64::NEG_INFINITY };
    }
    if b.is_infinite() {
        return 0.0;
    }
    let q = a / b;
    if q.is_infinite() {
        return match d {
            Dir::Down if q > 0.0 => f64::MAX,
            Dir::Up if q < 0.0 => f64::MIN,
            _ => q,
        };
    }
    if q == 0.0 {
        let pos = (a > 0.0) == (b > 0.0);
        return match (pos, d) {
            (true, Dir::Up) => f64::from_bits(1),
            (false, Dir::Down) => -f64::from_bits(1),
            _ => 0.0,
        };
    }
    // sign(a/b - q) = -sign(q*b - a) * sign(b)
    let s = prod_cmp(q, b, a).reverse();
    let err = if b > 0.0 { s } else { s.reverse() };
    settle(q, err, d)
}

/// Directed square root of a nonnegative endpoint.
fn sqrt_dir(x: f64, d: Dir) -> f64 {
    debug_assert!(x >= 0.0);
    if x == 0.0 || x.is_infinite() {
        return x;
    }
    let r = x.sqrt();
    // sign(sqrt(x) - r) = sign(x - r^2) for nonnegative r
    settle(r, prod_cmp(r, r, x).reverse(), d)
}

/// Directed integer power of one endpoint, `k >= 1`: the computed value is
/// corrected against the exact power until it is the tightest sound bound.
fn pow_dir(t: f64, k: u32, d: Dir) -> f64 {
    debug_assert!(k >= 1);
    if k == 1 || t == 0.0 {
        return t;
    }
    if t.is_infinite() {
        return if t > 0.0 || k % 2 == 1 { t } else { f64::INFINITY };
    }
    if k == 2 {
        return mul_dir(t, t, d);
    }
    // cmp(p) = sign(t^k - p), with infinite candidates decided directly.
    let cmp = |p: f64| -> Ordering {
        if p == f64::INFINITY {
            Ordering::Less
        } else if p == f64::NEG_INFINITY {
            Ordering::Greater
        } else {
            exact::cmp_pow(t, k, p)
        }
    };
    let mut p = t.powi(k as i32);
    match d {
        Dir::Up => {
            while cmp(p) == Ordering::Greater {
                p = p.next_up();
            }
            while cmp(p.next_down()) != Ordering::Greater {
                p = p.next_down();
            }
        }
        Dir::Down => {
            while cmp(p) == Ordering::Less {
                p = p.next_down();
            }
            while cmp(p.next_up()) != Ordering::Less {
                p = p.next_up();
            }
        }
    }
    p
}

/// Directed k-th root of one endpoint, `k >= 1`; negative inputs are allowed
/// for odd `k` (odd symmetry). Returns the tightest representable bound of
/// the exact real root.
fn root_dir(x: f64, k: u32, d: Dir) -> f64 {
    debug_assert!(k >= 1);
    if k == 1 || x == 0.0 || x.is_infinite() {
        return x;
    }
    if x < 0.0 {
        debug_assert!(k % 2 == 1);
        let flipped = match d {
            Dir::Down => Dir::Up,
            Dir::Up => Dir::Down,
        };
        return -root_dir(-x, k, flipped);
    }
    let mut r = match k {
        2 => x.sqrt(),
        3 => x.cbrt(),
        _ => x.powf(1.0 / k as f64),
    };
    if !r.is_finite() || r <= 0.0 {
        r = 1.0;
    }
    // cmp(c) = sign(c^k - x)
    let cmp = |c: f64| exact::cmp_pow(c, k, x);
    match d {
        Dir::Up => {
            // smallest representable r with r^k >= x
            while cmp(r) == Ordering::Less {
                r = r.next_up();
            }
            while r > 0.0 && cmp(r.next_down()) != Ordering::Less {
                r = r.next_down();
            }
        }
        Dir::Down => {
            while cmp(r) == Ordering::Greater {
                r = r.next_down();
            }
            while cmp(r.next_up()) != Ordering::Greater {
                r = r.next_up();
            }
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Interval
// ---------------------------------------------------------------------------

/// A closed interval of extended reals, or the distinguished empty set.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

/// Normalizes -0.0 endpoints to +0.0 so printed traces never show "-0".
fn clean_zero(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

impl Interval {
    /// The empty interval.
    pub const EMPTY: Interval = Interval { lo: f64::INFINITY, hi: f64::NEG_INFINITY };
    /// The whole extended real line.
    pub const WHOLE: Interval = Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };

    /// Builds `[lo, hi]`. Panics on NaN endpoints, `lo > hi`, or a pair that
    /// denotes no real set (`lo = +inf` or `hi = -inf`); the empty interval
    /// is only ever the canonical [`Interval::EMPTY`].
    pub fn new(lo: f64, hi: f64) -> Interval {
        assert!(!lo.is_nan() && !hi.is_nan(), "interval endpoint is NaN");
        assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        assert!(lo < f64::INFINITY && hi > f64::NEG_INFINITY, "interval [{lo}, {hi}] holds no reals");
        Interval { lo: clean_zero(lo), hi: clean_zero(hi) }
    }

    /// The degenerate interval `[v, v]`.
    pub fn point(v: f64) -> Interval {
        Interval::new(v, v)
    }

    /// Builds `[lo, hi]`, mapping an inverted pair to the empty interval.
    fn enclosure(lo: f64, hi: f64) -> Interval {
        if lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            Interval::EMPTY
        } else {
            Interval { lo: clean_zero(lo), hi: clean_zero(hi) }
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    /// True when the interval is a single point.
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// `hi - lo`; 0 for the empty interval, +inf for unbounded ones.
    pub fn width(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            self.hi - self.lo
        }
    }

    /// Largest absolute value of the interval; 0 for the empty interval.
    pub fn magnitude(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            self.lo.abs().max(self.hi.abs())
        }
    }

    /// A finite value inside the interval. Panics on the empty interval and
    /// on the whole line: asking for their midpoint is a solver logic bug.
    pub fn midpoint(&self) -> f64 {
        assert!(!self.is_empty(), "midpoint of empty interval");
        assert!(
            !(self.lo == f64::NEG_INFINITY && self.hi == f64::INFINITY),
            "midpoint of the whole line"
        );
        if self.lo == f64::NEG_INFINITY {
            return f64::MIN;
        }
        if self.hi == f64::INFINITY {
            return f64::MAX;
        }
        let m = self.lo + (self.hi - self.lo) / 2.0;
        m.clamp(self.lo, self.hi)
    }

    /// Closed membership test; NaN is never a member.
    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// True when `other` is a subset of `self`.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        other.is_empty() || (self.lo <= other.lo && other.hi <= self.hi)
    }

    /// Set intersection; exact.
    pub fn intersect(&self, other: &Interval) -> Interval {
        Interval::enclosure(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    /// Smallest interval containing both operands; exact.
    pub fn hull(&self, other: &Interval) -> Interval {
        if self.is_empty() {
            return *other;
        }
        if other.is_empty() {
            return *self;
        }
        Interval::enclosure(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn neg(&self) -> Interval {
        if self.is_empty() {
            return Interval::EMPTY;
        }
        Interval::enclosure(-self.hi, -self.lo)
    }

    pub fn add(&self, other: &Interval) -> Interval {
        if self.is_empty() || other.is_empty() {
            return Interval::EMPTY;
        }
        Interval::enclosure(add_dir(self.lo, other.lo, Dir::Down), add_dir(self.hi, other.hi, Dir::Up))
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        if self.is_empty() || other.is_empty() {
            return Interval::EMPTY;
        }
        Interval::enclosure(sub_dir(self.lo, other.hi, Dir::Down), sub_dir(self.hi, other.lo, Dir::Up))
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        if self.is_empty() || other.is_empty() {
            return Interval::EMPTY;
        }
        let (a, b) = (self, other);
        if (a.lo == 0.0 && a.hi == 0.0) || (b.lo == 0.0 && b.hi == 0.0) {
            return Interval::point(0.0);
        }
        let corners = [(a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi)];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (x, y) in corners {
            lo = lo.min(mul_dir(x, y, Dir::Down));
            hi = hi.max(mul_dir(x, y, Dir::Up));
        }
        Interval::enclosure(lo, hi)
    }

    /// Quotient set enclosure. A divisor interval containing 0 yields the
    /// hull of the two one-sided quotient sets (possibly unbounded); a
    /// divisor equal to `[0, 0]` admits no valid denominator and gives Empty.
    pub fn div(&self, other: &Interval) -> Interval {
        if self.is_empty() || other.is_empty() {
            return Interval::EMPTY;
        }
        let (a, b) = (self, other);
        if b.lo == 0.0 && b.hi == 0.0 {
            return Interval::EMPTY;
        }
        if !b.contains(0.0) {
            let corners = [(a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi)];
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for (x, y) in corners {
                lo = lo.min(div_dir(x, y, Dir::Down));
                hi = hi.max(div_dir(x, y, Dir::Up));
            }
            return Interval::enclosure(lo, hi);
        }
        if a.lo == 0.0 && a.hi == 0.0 {
            return Interval::point(0.0);
        }
        let mut out = Interval::EMPTY;
        if b.hi > 0.0 {
            // divisors in (0, b.hi]
            let lo = if a.lo > 0.0 {
                div_dir(a.lo, b.hi, Dir::Down)
            } else if a.lo == 0.0 {
                0.0
            } else {
                f64::NEG_INFINITY
            };
            let hi = if a.hi < 0.0 {
                div_dir(a.hi, b.hi, Dir::Up)
            } else if a.hi == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
            out = out.hull(&Interval::enclosure(lo, hi));
        }
        if b.lo < 0.0 {
            // divisors in [b.lo, 0)
            let lo = if a.hi < 0.0 {
                div_dir(a.hi, b.lo, Dir::Down)
            } else if a.hi == 0.0 {
                0.0
            } else {
                f64::NEG_INFINITY
            };
            let hi = if a.lo > 0.0 {
                div_dir(a.lo, b.lo, Dir::Up)
            } else if a.lo == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
            out = out.hull(&Interval::enclosure(lo, hi));
        }
        out
    }

    /// Integer power, `k >= 1`.
    pub fn pow(&self, k: u32) -> Interval {
        assert!(k >= 1, "pow exponent must be >= 1");
        if self.is_empty() {
            return Interval::EMPTY;
        }
        if k == 1 {
            return *self;
        }
        if k % 2 == 1 {
            return Interval::enclosure(pow_dir(self.lo, k, Dir::Down), pow_dir(self.hi, k, Dir::Up));
        }
        if self.lo >= 0.0 {
            Interval::enclosure(pow_dir(self.lo, k, Dir::Down), pow_dir(self.hi, k, Dir::Up))
        } else if self.hi <= 0.0 {
            Interval::enclosure(pow_dir(-self.hi, k, Dir::Down), pow_dir(-self.lo, k, Dir::Up))
        } else {
            Interval::enclosure(0.0, pow_dir((-self.lo).max(self.hi), k, Dir::Up))
        }
    }

    /// Integer root, `k >= 1`. Even roots are the nonnegative branch over
    /// the nonnegative part of the interval (Empty if there is none); odd
    /// roots are defined on the whole line.
    pub fn root(&self, k: u32) -> Interval {
        assert!(k >= 1, "root index must be >= 1");
        if self.is_empty() {
            return Interval::EMPTY;
        }
        if k == 1 {
            return *self;
        }
        if k.is_multiple_of(2) {
            let d = self.intersect(&Interval::new(0.0, f64::INFINITY));
            if d.is_empty() {
                return Interval::EMPTY;
            }
            Interval::enclosure(root_dir(d.lo, k, Dir::Down), root_dir(d.hi, k, Dir::Up))
        } else {
            Interval::enclosure(root_dir(self.lo, k, Dir::Down), root_dir(self.hi, k, Dir::Up))
        }
    }

    /// Square root over the nonnegative part of the interval.
    pub fn sqrt(&self) -> Interval {
        if self.is_empty() {
            return Interval::EMPTY;
        }
        let d = self.intersect(&Interval::new(0.0, f64::INFINITY));
        if d.is_empty() {
            return Interval::EMPTY;
        }
        Interval::enclosure(sqrt_dir(d.lo, Dir::Down), sqrt_dir(d.hi, Dir::Up))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "[empty]")
        } else {
            write!(f, "[{},{}]", self.lo, self.hi)
        }
    }
}

impl std::ops::Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::add(&self, &rhs)
    }
}

impl std::ops::Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval::sub(&self, &rhs)
    }
}

impl std::ops::Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        Interval::mul(&self, &rhs)
    }
}

impl std::ops::Div for Interval {
    type Output = Interval;
    fn div(self, rhs: Interval) -> Interval {
        Interval::div(&self, &rhs)
    }
}

impl std::ops::Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::neg(&self)
    }
}

// ---------------------------------------------------------------------------
// inverse projections
// ---------------------------------------------------------------------------

/// Elementary operation kinds for [`project_inverse`].
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum ElemOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    /// Integer power with exponent `k >= 2`.
    Pow(u32),
    Sqrt,
}

/// Given `result = op(operands)` with the exact result known to lie in
/// `result`, contracts each operand interval to the values that can still
/// produce a result in `result`. Every returned interval is a subset of the
/// corresponding operand and a superset of the consistent operand values.
pub fn project_inverse(op: ElemOp, result: Interval, operands: &[Interval]) -> Vec<Interval> {
    let r = &result;
    match op {
        ElemOp::Add => {
            let (a, b) = (&operands[0], &operands[1]);
            vec![a.intersect(&r.sub(b)), b.intersect(&r.sub(a))]
        }
        ElemOp::Sub => {
            let (a, b) = (&operands[0], &operands[1]);
            vec![a.intersect(&r.add(b)), b.intersect(&a.sub(r))]
        }
        ElemOp::Mul => {
            let (a, b) = (&operands[0], &operands[1]);
            vec![inverse_factor(r, b, a), inverse_factor(r, a, b)]
        }
        ElemOp::Div => {
            let (a, b) = (&operands[0], &operands[1]);
            let a2 = a.intersect(&r.mul(b));
            // A zero dividend with an admissible zero quotient makes every
            // divisor consistent, which b ∩ (a / r) would lose.
            let b2 = if a.contains(0.0) && r.contains(0.0) {
                *b
            } else {
                b.intersect(&a.div(r))
            };
            vec![a2, b2]
        }
        ElemOp::Neg => vec![operands[0].intersect(&r.neg())],
        ElemOp::Pow(k) => {
            let a = &operands[0];
            if k % 2 == 1 {
                vec![a.intersect(&r.root(k))]
            } else {
                // Hull of the two symmetric branches restricted to the operand.
                let p = r.intersect(&Interval::new(0.0, f64::INFINITY)).root(k);
                let pos = a.intersect(&p);
                let neg = a.intersect(&p.neg());
                vec![pos.hull(&neg)]
            }
        }
        ElemOp::Sqrt => {
            let a = &operands[0];
            let rr = r.intersect(&Interval::new(0.0, f64::INFINITY));
            if rr.is_empty() {
                return vec![Interval::EMPTY];
            }
            vec![a.intersect(&rr.pow(2))]
        }
    }
}

/// Contracts one factor of `factor * other ⊆ result`.
fn inverse_factor(result: &Interval, other: &Interval, factor: &Interval) -> Interval {
    if other.is_empty() || result.is_empty() {
        return Interval::EMPTY;
    }
    if other.contains(0.0) {
        // A zero cofactor with an admissible zero product keeps every
        // factor; a cofactor pinned to zero with 0 outside the result
        // admits none. Otherwise fall through to the quotient, whose
        // zero-straddling divisor already yields a sound hull.
        if result.contains(0.0) {
            return *factor;
        }
        if other.is_point() {
            return Interval::EMPTY;
        }
    }
    factor.intersect(&result.div(other))
}
