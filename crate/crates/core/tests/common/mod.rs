//! Shared test support: a compact double-double type for extended-precision
//! oracle evaluations, and a deterministic uniform sampler.

#![allow(dead_code)]

/// Double-double value `hi + lo` with roughly 31 significant digits.
#[derive(Debug, Clone, Copy)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd { hi: p, lo: a.mul_add(b, -p) }
}

impl Dd {
    pub fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Pi to double-double precision.
    pub fn pi() -> Self {
        Dd { hi: std::f64::consts::PI, lo: 1.2246467991473532e-16 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, other: Dd) -> Dd {
        let s = two_sum(self.hi, other.hi);
        let lo = s.lo + self.lo + other.lo;
        let out = two_sum(s.hi, lo);
        Dd { hi: out.hi, lo: out.lo }
    }

    pub fn sub(self, other: Dd) -> Dd {
        self.add(Dd { hi: -other.hi, lo: -other.lo })
    }

    pub fn mul(self, other: Dd) -> Dd {
        let p = two_prod(self.hi, other.hi);
        let lo = p.lo + self.hi * other.lo + self.lo * other.hi;
        let out = two_sum(p.hi, lo);
        Dd { hi: out.hi, lo: out.lo }
    }

    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul(Dd::from(q1)));
        let q2 = r.hi / other.hi;
        let r2 = r.sub(other.mul(Dd::from(q2)));
        let q3 = r2.hi / other.hi;
        Dd::from(q1).add(Dd::from(q2)).add(Dd::from(q3))
    }

    pub fn sqrt(self) -> Dd {
        let y = self.hi.sqrt();
        if y == 0.0 {
            return Dd::from(0.0);
        }
        let r = self.sub(two_prod(y, y));
        Dd::from(y).add(Dd::from(r.to_f64() / (2.0 * y)))
    }

    /// `exp` limited by the accuracy of the `f64` exponential of `hi`.
    pub fn exp(self) -> Dd {
        let e = self.hi.exp();
        let corr = self.lo + 0.5 * self.lo * self.lo;
        Dd::from(e).add(Dd::from(e * corr))
    }
}

/// Deterministic 64-bit LCG mapped to uniform `[0, 1)` samples.
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    pub fn next_f64(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}
