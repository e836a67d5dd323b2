use std::ops::{Add, Mul};

/// Gaussian integer used for the structure constants of the normal-ordering
/// rules; converted to an exact coefficient only once per produced term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gauss {
    pub re: i128,
    pub im: i128,
}

impl Gauss {
    pub const ONE: Gauss = Gauss { re: 1, im: 0 };
    pub const ZERO: Gauss = Gauss { re: 0, im: 0 };

    pub const fn new(re: i128, im: i128) -> Self {
        Gauss { re, im }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    /// `(-i)^k`
    pub fn minus_i_pow(k: u32) -> Gauss {
        match k % 4 {
            0 => Gauss::new(1, 0),
            1 => Gauss::new(0, -1),
            2 => Gauss::new(-1, 0),
            _ => Gauss::new(0, 1),
        }
    }

    pub fn scale(self, s: i128) -> Gauss {
        Gauss::new(checked(self.re.checked_mul(s)), checked(self.im.checked_mul(s)))
    }
}

fn checked(v: Option<i128>) -> i128 {
    v.expect("structure constant overflowed i128")
}

impl Add for Gauss {
    type Output = Gauss;
    fn add(self, rhs: Gauss) -> Gauss {
        Gauss::new(checked(self.re.checked_add(rhs.re)), checked(self.im.checked_add(rhs.im)))
    }
}

impl Mul for Gauss {
    type Output = Gauss;
    fn mul(self, rhs: Gauss) -> Gauss {
        let rr = checked(self.re.checked_mul(rhs.re));
        let ii = checked(self.im.checked_mul(rhs.im));
        let ri = checked(self.re.checked_mul(rhs.im));
        let ir = checked(self.im.checked_mul(rhs.re));
        Gauss::new(checked(rr.checked_sub(ii)), checked(ri.checked_add(ir)))
    }
}
