//! Brute-force reference implementations over bitmask subsets.
//!
//! Only the order relation is read from the library; every derived set is
//! recomputed here from the definitions.

#![allow(dead_code)]

use macneille::{FinitePoset, PosetMap, Subset};

pub type Mask = u32;

pub fn members(m: Mask) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| m >> i & 1 == 1)
}

pub fn mask_of(s: &Subset) -> Mask {
    s.iter().fold(0, |m, i| m | 1 << i)
}

pub fn is_sub(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// A finite order given by its `<=` matrix.
#[derive(Clone, Debug)]
pub struct Order {
    pub n: usize,
    pub le: Vec<Vec<bool>>,
}

impl Order {
    pub fn of(p: &FinitePoset) -> Order {
        let n = p.len();
        Order {
            n,
            le: (0..n)
                .map(|a| (0..n).map(|b| p.leq(a, b)).collect())
                .collect(),
        }
    }

    pub fn full(&self) -> Mask {
        ((1u64 << self.n) - 1) as Mask
    }

    pub fn all(&self) -> impl Iterator<Item = Mask> {
        0..=self.full()
    }

    pub fn ub(&self, a: Mask) -> Mask {
        (0..self.n)
            .filter(|&y| members(a).all(|x| self.le[x][y]))
            .fold(0, |m, y| m | 1 << y)
    }

    pub fn lb(&self, a: Mask) -> Mask {
        (0..self.n)
            .filter(|&y| members(a).all(|x| self.le[y][x]))
            .fold(0, |m, y| m | 1 << y)
    }

    pub fn closure(&self, a: Mask) -> Mask {
        self.lb(self.ub(a))
    }

    pub fn ideal(&self, x: usize) -> Mask {
        (0..self.n)
            .filter(|&y| self.le[y][x])
            .fold(0, |m, y| m | 1 << y)
    }

    pub fn filter(&self, x: usize) -> Mask {
        (0..self.n)
            .filter(|&y| self.le[x][y])
            .fold(0, |m, y| m | 1 << y)
    }

    /// All cuts in increasing numeric mask order.
    pub fn cuts(&self) -> Vec<Mask> {
        self.all().filter(|&a| self.closure(a) == a).collect()
    }

    pub fn has_extrema(&self) -> bool {
        (0..self.n).any(|x| self.ideal(x) == self.full() || self.filter(x) == self.full())
    }

    /// Every pair of members has an upper bound inside `a` (vacuous for the empty set).
    pub fn directed(&self, a: Mask) -> bool {
        members(a).all(|x| members(a).all(|y| members(a).any(|z| self.le[x][z] && self.le[y][z])))
    }

    pub fn cofinal(&self, b: Mask, a: Mask) -> bool {
        is_sub(b, a) && members(a).all(|x| members(b).any(|y| self.le[x][y]))
    }

    pub fn maximal(&self, a: Mask) -> Mask {
        members(a)
            .filter(|&x| !members(a).any(|y| y != x && self.le[x][y]))
            .fold(0, |m, x| m | 1 << x)
    }

    /// Subsets of `a`, including `a` and the empty set.
    pub fn subsets_of(a: Mask) -> impl Iterator<Item = Mask> {
        let mut next = Some(a);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & a) };
            Some(cur)
        })
    }
}

/// A map between two orders, given by its table.
pub struct MapOracle {
    pub x: Order,
    pub y: Order,
    pub t: Vec<usize>,
}

impl MapOracle {
    pub fn of(m: &PosetMap<'_>) -> MapOracle {
        MapOracle {
            x: Order::of(m.domain()),
            y: Order::of(m.codomain()),
            t: m.table().to_vec(),
        }
    }

    pub fn image(&self, a: Mask) -> Mask {
        members(a).fold(0, |m, x| m | 1 << self.t[x])
    }

    pub fn increasing(&self) -> bool {
        (0..self.x.n)
            .all(|a| (0..self.x.n).all(|b| !self.x.le[a][b] || self.y.le[self.t[a]][self.t[b]]))
    }

    pub fn sharp(&self, a: Mask) -> Mask {
        self.y.closure(self.image(a))
    }

    /// Meet over `l` of the closures of the images of `[l> ∩ A`.
    pub fn over(&self, a: Mask, l: Mask) -> Mask {
        if a == 0 {
            return self.y.closure(0);
        }
        members(l).fold(self.y.full(), |acc, x| {
            acc & self.sharp(self.x.filter(x) & a)
        })
    }

    pub fn tilde(&self, a: Mask) -> Mask {
        self.over(a, a)
    }

    /// Meet of `sharp(B)` over all `B` cofinal in `A`.
    pub fn bar(&self, a: Mask) -> Mask {
        Order::subsets_of(a)
            .filter(|&b| self.x.cofinal(b, a))
            .fold(self.y.full(), |acc, b| acc & self.sharp(b))
    }
}
