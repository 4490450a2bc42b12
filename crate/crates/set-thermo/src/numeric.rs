//! Small numerical helpers: error-free float transforms and stable
//! elementary functions used across the crate.

/// Knuth two-sum: returns `(s, e)` with `s = fl(a + b)` and `a + b = s + e` exactly.
#[inline]
pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Exact product via FMA: returns `(p, e)` with `a * b = p + e` exactly.
#[inline]
pub(crate) fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Unevaluated double-double sum `hi + lo`.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub fn add_f64(self, x: f64) -> Self {
        let (s, e) = two_sum(self.hi, x);
        let lo = self.lo + e;
        let (hi, lo) = two_sum(s, lo);
        Dd { hi, lo }
    }

    pub fn add_dd(self, other: Dd) -> Self {
        self.add_f64(other.hi).add_f64(other.lo)
    }

    pub fn scale(self, k: f64) -> Self {
        let (p, e) = two_prod(self.hi, k);
        let lo = self.lo.mul_add(k, e);
        let (hi, lo) = two_sum(p, lo);
        Dd { hi, lo }
    }

    pub fn square(self) -> Self {
        let (p, e) = two_prod(self.hi, self.hi);
        let cross = 2.0 * self.hi * self.lo + self.lo * self.lo;
        Dd { hi: p, lo: e }.add_f64(cross)
    }

    pub fn sub_dd(self, other: Dd) -> Self {
        self.add_f64(-other.hi).add_f64(-other.lo)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// `x ln x` extended continuously by 0 at x = 0 (and clamping float noise below it).
#[inline]
pub fn x_ln_x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// atanh evaluated as `ln(1 + 2x/(1-x)) / 2`, which stays accurate for x near 0
/// where the naive `ln((1+x)/(1-x))` form loses digits.
#[inline]
pub fn atanh_stable(x: f64) -> f64 {
    0.5 * (2.0 * x / (1.0 - x)).ln_1p()
}
