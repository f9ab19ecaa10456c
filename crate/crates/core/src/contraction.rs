//! Contraction cells for the quotient map.
//!
//! For parallel cells `x`, `y` that become equal in the quotient, the
//! contraction cell goes from `x` to `y` on the nose and is identified with
//! the identity on `x` in the quotient. Cells are made on demand.

use crate::congruence::eq;
use crate::duality::DualityWord;
use crate::error::{Error, Result};
use crate::term::Term;

fn parallel(x: &Term, y: &Term) -> Result<bool> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    if x.dim() == 0 {
        return Err(Error::Dimension("contraction cells need cells of dimension at least 1".into()));
    }
    Ok(x.boundaries() == y.boundaries())
}

/// Whether `(x, y)` may be contracted: same boundaries and equal in the quotient.
pub fn contraction_domain(x: &Term, y: &Term, bound: usize) -> Result<bool> {
    if !parallel(x, y)? {
        return Ok(false);
    }
    eq(x, y, bound)
}

/// The contraction cell from `x` to `y`; the identity on `x` when they coincide.
pub fn contract(x: &Term, y: &Term, truncation: usize, bound: usize) -> Result<Term> {
    if !contraction_domain(x, y, bound)? {
        return Err(Error::Domain(format!("{x} and {y} are not parallel and equal")));
    }
    if x.dim() >= truncation {
        return Err(Error::TruncationExceeded { dim: x.dim() + 1, truncation });
    }
    if x == y {
        return Term::identity(x, truncation);
    }
    Ok(Term::raw_ctr(x.clone(), y.clone(), DualityWord::empty()))
}

/// A contraction cell read from text: the endpoints must differ.
pub fn checked_cell(truncation: usize, x: &Term, y: &Term, bound: usize) -> Result<Term> {
    if x == y {
        return Err(Error::Domain(format!("contraction of {x} with itself is written (id {x})")));
    }
    contract(x, y, truncation, bound)
}

/// Contraction of endpoints already known to be in the domain, as produced by
/// relabelling or flattening a valid cell. Only the dimensions are checked.
pub(crate) fn contract_trusted(x: Term, y: Term, truncation: usize) -> Result<Term> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    if x == y {
        return Term::identity(&x, truncation);
    }
    Ok(Term::raw_ctr(x, y, DualityWord::empty()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::DEFAULT_BOUND;
    use crate::globular::fixtures;
    use crate::magma::Magma;

    #[test]
    fn domain_examples() {
        let m = Magma::new(fixtures::q2());
        let f = m.gen("f").unwrap();
        let fa = m.parse("(comp 0 f (id A))").unwrap();
        assert_eq!(contraction_domain(&f, &fa, DEFAULT_BOUND), Ok(true));
        assert_eq!(contraction_domain(&f, &m.gen("h").unwrap(), DEFAULT_BOUND), Ok(false));
        assert_eq!(contraction_domain(&f, &m.gen("g").unwrap(), DEFAULT_BOUND), Ok(false));
        let a = m.gen("A").unwrap();
        assert!(matches!(contraction_domain(&a, &a, DEFAULT_BOUND), Err(Error::Dimension(_))));
    }

    #[test]
    fn contract_examples() {
        let m = Magma::new(fixtures::q2());
        let n = m.truncation();
        let f = m.gen("f").unwrap();
        assert_eq!(contract(&f, &f, n, DEFAULT_BOUND).unwrap(), m.id(&f).unwrap());
        let fa = m.parse("(comp 0 f (id A))").unwrap();
        let c = contract(&fa, &f, n, DEFAULT_BOUND).unwrap();
        assert_eq!(c.source().unwrap(), fa);
        assert_eq!(c.target().unwrap(), f);
        assert_eq!(eq(&c, &m.id(&f).unwrap(), DEFAULT_BOUND), Ok(true));
        assert!(matches!(contract(&f, &m.gen("h").unwrap(), n, DEFAULT_BOUND), Err(Error::Domain(_))));
    }

    #[test]
    fn top_dimension_cannot_be_contracted() {
        let m = Magma::new(fixtures::q2());
        let u = m.gen("u").unwrap();
        let u2 = m.parse("(comp 1 u (id f))").unwrap();
        assert_eq!(
            contract(&u2, &u, m.truncation(), DEFAULT_BOUND),
            Err(Error::TruncationExceeded { dim: 3, truncation: 2 })
        );
    }
}
