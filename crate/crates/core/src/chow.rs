//! Exact arithmetic in the Chow ring of `P(E)` over a curve.
//!
//! For a rank-`r` bundle `E` on a curve the ring is generated by the
//! relative hyperplane class `xi` and the fibre class `F`, subject to
//! `F^2 = 0` and the Grothendieck relation `xi^r = deg(E) xi^{r-1} F`
//! (higher Chern classes of `E` vanish on a curve). Every class is kept
//! in the reduced basis `{xi^k, xi^k F : 0 <= k <= r-1}`; reduction first
//! rewrites `xi^r -> deg(E) xi^{r-1} F` and then truncates `F^2`, in that
//! order.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::SplitHiggsBundle;
use crate::rat::{fmt_rat, rat_int, Rat};

/// The projective bundle `P(E)` a class lives on, determined by the rank
/// and degree of `E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChowAmbient {
    pub rank: i64,
    pub deg_e: i64,
}

impl ChowAmbient {
    pub fn new(rank: i64, deg_e: i64) -> Result<Self> {
        if rank < 1 {
            return Err(Error::NonpositiveAmbientRank(rank));
        }
        Ok(ChowAmbient { rank, deg_e })
    }

    pub fn from_bundle(bundle: &SplitHiggsBundle) -> Result<Self> {
        bundle.require_valid()?;
        ChowAmbient::new(bundle.total_rank(), bundle.total_degree())
    }

    pub fn slope(&self) -> Rat {
        Rat::new(self.deg_e.into(), self.rank.into())
    }

    fn check_same(&self, other: &ChowAmbient) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                left_rank: self.rank,
                left_deg: self.deg_e,
                right_rank: other.rank,
                right_deg: other.deg_e,
            })
        }
    }
}

/// A reduced element of the Chow ring of `P(E)`:
/// `sum_k xi_part[k] xi^k  +  sum_k fib_part[k] xi^k F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowClass {
    ambient: ChowAmbient,
    xi_part: Vec<Rat>,
    fib_part: Vec<Rat>,
}

impl ChowClass {
    pub fn zero(ambient: ChowAmbient) -> Self {
        let r = ambient.rank as usize;
        ChowClass {
            ambient,
            xi_part: vec![Rat::zero(); r],
            fib_part: vec![Rat::zero(); r],
        }
    }

    /// The fundamental class of `P(E)`.
    pub fn one(ambient: ChowAmbient) -> Self {
        Self::monomial(ambient, 0, false, rat_int(1))
    }

    /// `c * xi^k` (or `c * xi^k F`), reduced.
    pub fn monomial(ambient: ChowAmbient, xi_exp: usize, with_fibre: bool, coeff: Rat) -> Self {
        let mut class = Self::zero(ambient);
        class.accumulate(xi_exp, with_fibre, coeff);
        class
    }

    pub fn ambient(&self) -> ChowAmbient {
        self.ambient
    }

    /// Coefficient of `xi^k` in the reduced form.
    pub fn xi_coeff(&self, k: usize) -> Rat {
        self.xi_part.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of `xi^k F` in the reduced form.
    pub fn fib_coeff(&self, k: usize) -> Rat {
        self.fib_part.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Adds `c * xi^k F^f` to the class, applying the relations:
    /// `xi^r -> deg(E) xi^{r-1} F` first, then `F^2 -> 0`.
    fn accumulate(&mut self, xi_exp: usize, with_fibre: bool, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let r = self.ambient.rank as usize;
        if with_fibre {
            // xi^k F with k >= r rewrites to deg(E)^(..) xi^{r-1} F^2 = 0.
            if xi_exp < r {
                self.fib_part[xi_exp] += coeff;
            }
        } else if xi_exp < r {
            self.xi_part[xi_exp] += coeff;
        } else if xi_exp == r {
            self.fib_part[r - 1] += coeff * rat_int(self.ambient.deg_e);
        }
        // xi^{r+m} for m >= 1 rewrites to deg(E)^{m+1} xi^{r-1} F^{m+1} = 0.
    }

    pub fn is_zero(&self) -> bool {
        self.xi_part.iter().all(Rat::is_zero) && self.fib_part.iter().all(Rat::is_zero)
    }

    pub fn add(&self, rhs: &ChowClass) -> Result<ChowClass> {
        self.ambient.check_same(&rhs.ambient)?;
        let mut out = self.clone();
        for k in 0..out.xi_part.len() {
            out.xi_part[k] += rhs.xi_part[k].clone();
            out.fib_part[k] += rhs.fib_part[k].clone();
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &ChowClass) -> Result<ChowClass> {
        self.add(&rhs.scale(&rat_int(-1)))
    }

    pub fn scale(&self, c: &Rat) -> ChowClass {
        let mut out = self.clone();
        for k in 0..out.xi_part.len() {
            out.xi_part[k] *= c.clone();
            out.fib_part[k] *= c.clone();
        }
        out
    }

    /// Product in the Chow ring, reduced canonically.
    pub fn mul(&self, rhs: &ChowClass) -> Result<ChowClass> {
        self.ambient.check_same(&rhs.ambient)?;
        let mut out = Self::zero(self.ambient);
        for (i, a) in self.xi_part.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.xi_part.iter().enumerate() {
                out.accumulate(i + j, false, a.clone() * b.clone());
            }
            for (j, b) in rhs.fib_part.iter().enumerate() {
                out.accumulate(i + j, true, a.clone() * b.clone());
            }
        }
        for (i, a) in self.fib_part.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.xi_part.iter().enumerate() {
                out.accumulate(i + j, true, a.clone() * b.clone());
            }
            // fib * fib dies on F^2 = 0.
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<ChowClass> {
        let mut out = Self::one(self.ambient);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Degree of a top-dimensional 0-cycle class: the coefficient of
    /// `xi^{r-1} F`, normalized by `xi^{r-1} F = 1`. Lower-dimensional
    /// classes simply report 0 here.
    pub fn degree(&self) -> Rat {
        let r = self.ambient.rank as usize;
        self.fib_part[r - 1].clone()
    }

    /// Dimension of the cycle if it is pure-dimensional and nonzero.
    /// `xi^k` has dimension `r - k`; `xi^k F` has dimension `r - k - 1`.
    pub fn pure_dimension(&self) -> Option<i64> {
        let r = self.ambient.rank;
        let mut dims = std::collections::BTreeSet::new();
        for (k, c) in self.xi_part.iter().enumerate() {
            if !c.is_zero() {
                dims.insert(r - k as i64);
            }
        }
        for (k, c) in self.fib_part.iter().enumerate() {
            if !c.is_zero() {
                dims.insert(r - k as i64 - 1);
            }
        }
        if dims.len() == 1 {
            dims.into_iter().next()
        } else {
            None
        }
    }

    /// `pi_*` onto the base curve of a 1-cycle: the coefficient of
    /// `xi^{r-1}` (sections of multiplicity `m` push to `m [C]`, fibre
    /// lines push to 0).
    pub fn projection_degree(&self) -> Rat {
        let r = self.ambient.rank as usize;
        self.xi_part[r - 1].clone()
    }
}

fn write_term(out: &mut String, coeff: &Rat, symbol: &str) {
    let is_leading = out.is_empty();
    let minus = coeff < &Rat::zero();
    let abs = if minus { -coeff.clone() } else { coeff.clone() };
    if is_leading {
        if minus {
            out.push('-');
        }
    } else if minus {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    use num_traits::One;
    if abs.is_one() && !symbol.is_empty() {
        out.push_str(symbol);
    } else if symbol.is_empty() {
        out.push_str(&fmt_rat(&abs));
    } else {
        out.push_str(&fmt_rat(&abs));
        out.push(' ');
        out.push_str(symbol);
    }
}

fn xi_symbol(k: usize, with_fibre: bool) -> String {
    let mut s = match k {
        0 => String::new(),
        1 => "xi".to_string(),
        _ => format!("xi^{k}"),
    };
    if with_fibre {
        if !s.is_empty() {
            s.push(' ');
        }
        s.push('F');
    }
    s
}

impl fmt::Display for ChowClass {
    /// Canonical rendering: xi-powers descending, then xi^k F descending,
    /// e.g. `3 xi^2 - 12 xi F`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for k in (0..self.xi_part.len()).rev() {
            if !self.xi_part[k].is_zero() {
                write_term(&mut out, &self.xi_part[k], &xi_symbol(k, false));
            }
        }
        for k in (0..self.fib_part.len()).rev() {
            if !self.fib_part[k].is_zero() {
                write_term(&mut out, &self.fib_part[k], &xi_symbol(k, true));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// A divisor class `a xi + b F` on `P(E)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub ambient: ChowAmbient,
    pub xi_coeff: Rat,
    pub fib_coeff: Rat,
}

impl DivisorClass {
    pub fn new(ambient: ChowAmbient, xi_coeff: Rat, fib_coeff: Rat) -> Self {
        DivisorClass {
            ambient,
            xi_coeff,
            fib_coeff,
        }
    }

    /// `lambda = xi - mu(E) F`, the class whose nefness detects
    /// semistability.
    pub fn lambda(ambient: ChowAmbient) -> Self {
        let mu = ambient.slope();
        DivisorClass::new(ambient, rat_int(1), -mu)
    }

    /// The fibre class `F`.
    pub fn fibre(ambient: ChowAmbient) -> Self {
        DivisorClass::new(ambient, rat_int(0), rat_int(1))
    }

    /// The same element viewed in the full Chow-class representation.
    pub fn to_class(&self) -> ChowClass {
        let mut class = ChowClass::zero(self.ambient);
        class.accumulate(1, false, self.xi_coeff.clone());
        class.accumulate(0, true, self.fib_coeff.clone());
        class
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if !self.xi_coeff.is_zero() {
            write_term(&mut out, &self.xi_coeff, "xi");
        }
        if !self.fib_coeff.is_zero() {
            write_term(&mut out, &self.fib_coeff, "F");
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// Intersection number of a 1-cycle with a divisor:
/// `deg(cycle . (a xi + b F))`.
pub fn divisor_pairing(cycle: &ChowClass, divisor: &DivisorClass) -> Result<Rat> {
    Ok(cycle.mul(&divisor.to_class())?.degree())
}

/// The class of `P(G)` in `P(E)` for a rank-`q` quotient `E -> G` with
/// kernel degree `deg_n`, allowing `G` to carry torsion of degree
/// `deg_t`:  `xi^{r-q} - (deg_n + deg_t) xi^{r-q-1} F`.
pub fn projectivized_quotient_class(
    ambient: ChowAmbient,
    quotient_rank: i64,
    deg_n: i64,
    deg_t: i64,
) -> Result<ChowClass> {
    let r = ambient.rank;
    if quotient_rank <= 0 || quotient_rank >= r {
        return Err(Error::QuotientRankOutOfRange {
            q: quotient_rank,
            rank: r,
        });
    }
    if deg_t < 0 {
        return Err(Error::NegativeTorsion(deg_t));
    }
    let codim = (r - quotient_rank) as usize;
    let mut class = ChowClass::monomial(ambient, codim, false, rat_int(1));
    class.accumulate(codim - 1, true, rat_int(-(deg_n + deg_t)));
    Ok(class)
}

/// Pushforward along a sub-projectivization `j: P(G) -> P(E)` with class
/// `sub_class`, by the projection formula: `xi_G^k` maps to
/// `xi^k . sub_class` and `xi_G^k F_G` to `xi^k F . sub_class`.
pub fn pushforward_sub(class: &ChowClass, sub_class: &ChowClass) -> Result<ChowClass> {
    let small = class.ambient();
    let big = sub_class.ambient();
    if small.rank >= big.rank {
        return Err(Error::PushforwardRanks {
            small: small.rank,
            big: big.rank,
        });
    }
    let mut out = ChowClass::zero(big);
    for k in 0..small.rank as usize {
        let a = class.xi_coeff(k);
        if !a.is_zero() {
            let term = ChowClass::monomial(big, k, false, a).mul(sub_class)?;
            out = out.add(&term)?;
        }
        let b = class.fib_coeff(k);
        if !b.is_zero() {
            let term = ChowClass::monomial(big, k, true, b).mul(sub_class)?;
            out = out.add(&term)?;
        }
    }
    Ok(out)
}

/// The class `theta_s` carried through the Pluecker embedding: on
/// `P(Lambda^s E)` it becomes `xi - mu(Lambda^s E) F`, i.e. the lambda
/// class of the exterior power.
pub fn theta_via_plucker(bundle: &SplitHiggsBundle, s: i64) -> Result<DivisorClass> {
    let wedge = bundle.exterior_power(s)?;
    let ambient = ChowAmbient::from_bundle(&wedge)?;
    Ok(DivisorClass::lambda(ambient))
}

/// Pairing of a curve class in closed-cone coordinates with `xi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiPairing {
    /// `a mu + b`, the intersection with `xi`.
    pub value: Rat,
    /// `a mu`, the lower bound coming from the section part alone.
    pub bound: Rat,
    pub ok: bool,
}

/// For a 1-cycle `a lambda^{r-1} + b lambda^{r-2} F` with `a, b >= 0` on
/// `P(G)` with `mu = mu(G)`, computes its pairing with `xi` and the bound
/// `a mu`; `value >= bound` holds identically since `b >= 0`.
pub fn cone_xi_pairing(a: &Rat, b: &Rat, mu: &Rat) -> Result<XiPairing> {
    if a < &Rat::zero() || b < &Rat::zero() {
        return Err(Error::NotInConeCoordinates);
    }
    let bound = a.clone() * mu.clone();
    let value = bound.clone() + b.clone();
    let ok = value >= bound;
    Ok(XiPairing { value, bound, ok })
}
