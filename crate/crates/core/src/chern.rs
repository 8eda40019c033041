//! Formal Chern-class calculus truncated at cohomological degree 2.
//!
//! Classes are written in the basis `{c1, c1^2, c2}` of a rank-`r` bundle
//! `E` with no relations imposed. The module computes the discriminant
//! `Delta(E) = c2 - ((r-1)/2r) c1^2` and, by an independent expansion of
//! `E` into formal roots, the degree-2 class of `E ⊗ E*`, whose `r^2`
//! roots are the pairwise differences `x_i - x_j`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{fmt_rat, rat, rat_int, Rat};

/// Upper bound on the rank for the formal-root expansion; a test budget,
/// not a mathematical limit.
pub const MAX_EXPANSION_RANK: i64 = 6;

/// A formal characteristic class of degree at most 2 in the basis
/// `{c1, c1^2, c2}` of a rank-`rank` bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalClass {
    pub rank: i64,
    pub c1: Rat,
    pub c1_sq: Rat,
    pub c2: Rat,
}

impl FormalClass {
    pub fn new(rank: i64, c1: Rat, c1_sq: Rat, c2: Rat) -> Self {
        FormalClass {
            rank,
            c1,
            c1_sq,
            c2,
        }
    }

    pub fn scale(&self, factor: &Rat) -> FormalClass {
        FormalClass::new(
            self.rank,
            self.c1.clone() * factor.clone(),
            self.c1_sq.clone() * factor.clone(),
            self.c2.clone() * factor.clone(),
        )
    }
}

impl fmt::Display for FormalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (coeff, symbol) in [(&self.c2, "c2"), (&self.c1_sq, "c1^2"), (&self.c1, "c1")] {
            if coeff.is_zero() {
                continue;
            }
            let minus = coeff < &Rat::zero();
            let abs = if minus { -coeff.clone() } else { coeff.clone() };
            if out.is_empty() {
                if minus {
                    out.push('-');
                }
            } else if minus {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            use num_traits::One;
            if abs.is_one() {
                out.push_str(symbol);
            } else {
                out.push_str(&fmt_rat(&abs));
                out.push(' ');
                out.push_str(symbol);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// The discriminant `Delta(E) = c2 - ((r-1)/2r) c1^2`.
pub fn delta_class(rank: i64) -> Result<FormalClass> {
    if rank < 1 {
        return Err(Error::RankTooSmall { got: rank, min: 1 });
    }
    Ok(FormalClass::new(
        rank,
        rat_int(0),
        -rat(rank - 1, 2 * rank),
        rat_int(1),
    ))
}

/// A quadratic form in the formal roots `x_0 .. x_{r-1}`, stored as
/// integer coefficients on monomials `x_i x_j` with `i <= j`.
type QuadForm = BTreeMap<(usize, usize), i64>;

/// Degree-2 part of the total Chern class of a bundle with the given
/// linear forms as roots: the second elementary symmetric function.
fn elementary_symmetric_2(roots: &[Vec<i64>]) -> QuadForm {
    let mut quad: QuadForm = BTreeMap::new();
    for p in 0..roots.len() {
        for q in (p + 1)..roots.len() {
            for (i, &ci) in roots[p].iter().enumerate() {
                if ci == 0 {
                    continue;
                }
                for (j, &cj) in roots[q].iter().enumerate() {
                    if cj == 0 {
                        continue;
                    }
                    let key = (i.min(j), i.max(j));
                    *quad.entry(key).or_insert(0) += ci * cj;
                }
            }
        }
    }
    quad.retain(|_, c| *c != 0);
    quad
}

/// Expresses a symmetric quadratic form in `r >= 2` roots as
/// `A e1^2 + B e2` and verifies the rewriting monomial by monomial.
fn rewrite_in_c1sq_c2(rank: usize, quad: &QuadForm) -> Result<(Rat, Rat)> {
    let coeff = |key: (usize, usize)| -> i64 { quad.get(&key).copied().unwrap_or(0) };
    // e1^2 has coefficient 1 on squares and 2 on mixed monomials;
    // e2 has coefficient 1 on mixed monomials only.
    let a = coeff((0, 0));
    let b = coeff((0, 1)) - 2 * a;
    for i in 0..rank {
        for j in i..rank {
            let expected = if i == j { a } else { 2 * a + b };
            if coeff((i, j)) != expected {
                return Err(Error::InternalCheck(format!(
                    "quadratic form is not symmetric in the roots at x_{i} x_{j}"
                )));
            }
        }
    }
    Ok((rat_int(a), rat_int(b)))
}

/// `c2(E ⊗ E*)` computed by brute-force expansion: `E` gets `r` formal
/// roots, `E ⊗ E*` the `r^2` differences, and the resulting symmetric
/// function is re-expressed in `{c1^2, c2}` of `E`.
pub fn c2_tensor_dual(rank: i64) -> Result<FormalClass> {
    if !(2..=MAX_EXPANSION_RANK).contains(&rank) {
        return Err(Error::RankOutOfRange(rank, 2, MAX_EXPANSION_RANK));
    }
    let r = rank as usize;
    let mut roots = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            let mut form = vec![0i64; r];
            form[i] += 1;
            form[j] -= 1;
            roots.push(form);
        }
    }
    let quad = elementary_symmetric_2(&roots);
    let (c1_sq, c2) = rewrite_in_c1sq_c2(r, &quad)?;
    Ok(FormalClass::new(rank, rat_int(0), c1_sq, c2))
}

/// `c1(E ⊗ E*)`, computed by summing the `r^2` difference roots; always
/// zero, but derived rather than asserted.
pub fn c1_tensor_dual(rank: i64) -> Result<Rat> {
    if !(2..=MAX_EXPANSION_RANK).contains(&rank) {
        return Err(Error::RankOutOfRange(rank, 2, MAX_EXPANSION_RANK));
    }
    let r = rank as usize;
    let mut total = vec![0i64; r];
    for i in 0..r {
        for j in 0..r {
            total[i] += 1;
            total[j] -= 1;
        }
    }
    if total.iter().any(|&c| c != 0) {
        return Err(Error::InternalCheck(
            "difference roots do not sum to zero".into(),
        ));
    }
    Ok(rat_int(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_values() {
        assert_eq!(delta_class(2).unwrap().to_string(), "c2 - 1/4 c1^2");
        assert_eq!(delta_class(3).unwrap().to_string(), "c2 - 1/3 c1^2");
        // a line bundle has c2 = 0, so Delta = c2 is the zero class there
        assert_eq!(delta_class(1).unwrap().to_string(), "c2");
        assert!(delta_class(0).is_err());
    }

    #[test]
    fn tensor_dual_values() {
        assert_eq!(c2_tensor_dual(2).unwrap().to_string(), "4 c2 - c1^2");
        assert_eq!(c2_tensor_dual(3).unwrap().to_string(), "6 c2 - 2 c1^2");
        assert!(c2_tensor_dual(1).is_err());
        assert!(c2_tensor_dual(7).is_err());
    }

    #[test]
    fn tensor_identity_over_all_supported_ranks() {
        for rank in 2..=MAX_EXPANSION_RANK {
            let lhs = c2_tensor_dual(rank).unwrap();
            let rhs = delta_class(rank).unwrap().scale(&rat_int(2 * rank));
            assert_eq!(lhs, rhs, "rank {rank}");
        }
    }

    #[test]
    fn first_chern_class_of_tensor_dual_vanishes() {
        for rank in 2..=MAX_EXPANSION_RANK {
            assert_eq!(c1_tensor_dual(rank).unwrap(), rat_int(0));
        }
    }
}
