//! Sparse polynomials in `H` and `W` over `F2`.
//!
//! All coefficient rings used by the complexes are quotients or localizations
//! of `F2[H, W]`, so a single representation suffices: a sorted list of
//! distinct monomials `H^h W^w` (negative `h` only in the localized ring).

use alloc::vec::Vec;
use core::fmt;
use serde::{Deserialize, Serialize};

/// The coefficient ring of a complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    /// `F2`.
    F2,
    /// `F2[H]`.
    F2H,
    /// `F2[W]`.
    F2W,
    /// `F2[H, W]`.
    F2HW,
    /// `F2[H, H^-1, W]`.
    Localized,
}

impl Ring {
    /// Whether `H` may appear.
    pub fn has_h(self) -> bool {
        matches!(self, Ring::F2H | Ring::F2HW | Ring::Localized)
    }

    /// Whether `W` may appear.
    pub fn has_w(self) -> bool {
        matches!(self, Ring::F2W | Ring::F2HW | Ring::Localized)
    }

    /// Whether `p` is a unit of this ring.
    pub fn is_unit(self, p: &Poly) -> bool {
        match p.terms() {
            [m] => m.w == 0 && (m.h == 0 || self == Ring::Localized),
            _ => false,
        }
    }

    /// Short human-readable name.
    pub fn name(self) -> &'static str {
        match self {
            Ring::F2 => "F2",
            Ring::F2H => "F2[H]",
            Ring::F2W => "F2[W]",
            Ring::F2HW => "F2[H,W]",
            Ring::Localized => "F2[H,H^-1,W]",
        }
    }
}

/// A monomial `H^h W^w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mono {
    /// Exponent of `H`.
    pub h: i32,
    /// Exponent of `W`.
    pub w: i32,
}

impl Mono {
    /// The monomial 1.
    pub const ONE: Mono = Mono { h: 0, w: 0 };

    /// Builds `H^h W^w`.
    pub fn new(h: i32, w: i32) -> Self {
        Mono { h, w }
    }

    /// Product of monomials.
    pub fn mul(self, o: Mono) -> Mono {
        Mono { h: self.h + o.h, w: self.w + o.w }
    }

    /// Bigrading of the monomial (`H` has degree `(0,-2)`, `W` has `(-1,-2)`).
    pub fn degree(self) -> (i32, i32) {
        (-self.w, -2 * self.h - 2 * self.w)
    }
}

/// A polynomial over `F2` in `H` and `W`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Poly(Vec<Mono>);

impl Poly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    /// The constant 1.
    pub fn one() -> Self {
        Poly(alloc::vec![Mono::ONE])
    }

    /// A single monomial.
    pub fn mono(m: Mono) -> Self {
        Poly(alloc::vec![m])
    }

    /// Sorted distinct terms.
    pub fn terms(&self) -> &[Mono] {
        &self.0
    }

    /// Whether this is zero.
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// The single monomial if the polynomial has exactly one term.
    pub fn as_mono(&self) -> Option<Mono> {
        match self.0.as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    /// Adds a monomial in place (cancelling an equal one).
    pub fn add_mono(&mut self, m: Mono) {
        match self.0.binary_search(&m) {
            Ok(i) => {
                self.0.remove(i);
            }
            Err(i) => self.0.insert(i, m),
        }
    }

    /// Sum.
    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            match self.0[i].cmp(&o.0[j]) {
                core::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(o.0[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&o.0[j..]);
        Poly(out)
    }

    /// Adds `o` into `self`.
    pub fn add_assign(&mut self, o: &Poly) {
        *self = self.add(o);
    }

    /// Product.
    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for &a in &self.0 {
            for &b in &o.0 {
                out.add_mono(a.mul(b));
            }
        }
        out
    }

    /// Product with a monomial.
    pub fn mul_mono(&self, m: Mono) -> Poly {
        Poly(self.0.iter().map(|t| t.mul(m)).collect())
    }

    /// Substitutes `H -> h` and/or `W -> w` with `h, w` in `{0, 1}`.
    pub fn specialize(&self, h: Option<bool>, w: Option<bool>) -> Poly {
        let mut out = Poly::zero();
        for &t in &self.0 {
            let mut t = t;
            match h {
                Some(false) if t.h != 0 => continue,
                Some(_) => t.h = 0,
                None => {}
            }
            match w {
                Some(false) if t.w != 0 => continue,
                Some(_) => t.w = 0,
                None => {}
            }
            out.add_mono(t);
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut wrote = false;
            for (name, e) in [("H", m.h), ("W", m.w)] {
                if e != 0 {
                    if wrote {
                        f.write_str("*")?;
                    }
                    if e == 1 {
                        write!(f, "{name}")?;
                    } else {
                        write!(f, "{name}^{e}")?;
                    }
                    wrote = true;
                }
            }
            if !wrote {
                f.write_str("1")?;
            }
        }
        Ok(())
    }
}
