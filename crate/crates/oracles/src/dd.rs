//! Double-double arithmetic (about 106 bits of mantissa) with its own `exp`
//! and `ln`, independent of the platform libm beyond a starting guess.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DD {
    pub hi: f64,
    pub lo: f64,
}

pub const LN2: DD = DD {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};
pub const LN10: DD = DD {
    hi: std::f64::consts::LN_10,
    lo: -2.170_756_223_382_249_4e-16,
};

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DD {
    pub const ZERO: DD = DD { hi: 0.0, lo: 0.0 };
    pub const ONE: DD = DD { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> DD {
        DD { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn recip(self) -> DD {
        DD::ONE / self
    }

    fn mul_pow2(self, k: i32) -> DD {
        let f = 2f64.powi(k);
        DD {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    /// `e^x` by range reduction `x = k ln2 + r`, then a Taylor series on
    /// `r / 1024` and ten squarings.
    pub fn exp(self) -> DD {
        if self.hi == 0.0 {
            return DD::ONE;
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2 * DD::new(k)).mul_pow2(-10);
        let mut term = DD::ONE;
        let mut sum = DD::ONE;
        for i in 1..40 {
            term = term * r / DD::new(f64::from(i));
            sum = sum + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            sum = sum * sum;
        }
        sum.mul_pow2(k as i32)
    }

    /// Natural log by Newton iteration on `exp`.
    pub fn ln(self) -> DD {
        assert!(self.hi > 0.0, "ln of nonpositive {self:?}");
        let mut y = DD::new(self.hi.ln());
        for _ in 0..3 {
            y = y + self * (-y).exp() - DD::ONE;
        }
        y
    }

    pub fn log2(self) -> DD {
        self.ln() / LN2
    }

    pub fn sqrt(self) -> DD {
        if self.hi == 0.0 {
            return DD::ZERO;
        }
        let s = DD::new(self.hi.sqrt());
        // one Newton step doubles the precision
        s + (self - s * s) / (DD::new(2.0) * s)
    }
}

impl From<f64> for DD {
    fn from(x: f64) -> DD {
        DD::new(x)
    }
}

impl Add for DD {
    type Output = DD;
    fn add(self, o: DD) -> DD {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DD { hi, lo }
    }
}

impl Neg for DD {
    type Output = DD;
    fn neg(self) -> DD {
        DD {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DD {
    type Output = DD;
    fn sub(self, o: DD) -> DD {
        self + (-o)
    }
}

impl Mul for DD {
    type Output = DD;
    fn mul(self, o: DD) -> DD {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DD { hi, lo }
    }
}

impl Div for DD {
    type Output = DD;
    fn div(self, o: DD) -> DD {
        let q1 = self.hi / o.hi;
        let r = self - o * DD::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * DD::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DD { hi, lo } + DD::new(q3)
    }
}
