//! Sparse multilinear homogeneous polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::ops::Bound;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A multilinear monomial: strictly increasing variable indices.
pub type Monomial = Vec<usize>;

/// Homogeneous multilinear polynomial of a fixed degree. Terms are keyed by
/// sorted variable tuples, so the map order is graded lexicographic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearPoly {
    num_vars: usize,
    degree: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultilinearPoly {
    pub fn zero(num_vars: usize, degree: usize) -> Self {
        MultilinearPoly { num_vars, degree, terms: BTreeMap::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coef * monomial`; the monomial may be given unsorted.
    pub fn add_term(&mut self, mut monomial: Monomial, coef: BigRational) -> Result<()> {
        monomial.sort_unstable();
        if monomial.len() != self.degree {
            return Err(Error::InvalidParameter(format!(
                "monomial of degree {} in a degree-{} polynomial",
                monomial.len(),
                self.degree
            )));
        }
        if monomial.windows(2).any(|w| w[0] == w[1]) || monomial.last().is_some_and(|&v| v >= self.num_vars) {
            return Err(Error::InvalidParameter(format!("monomial {monomial:?} is not multilinear in range")));
        }
        let entry = self.terms.entry(monomial).or_insert_with(BigRational::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    pub fn evaluate(&self, values: &[BigRational]) -> Result<BigRational> {
        if values.len() != self.num_vars {
            return Err(Error::DimensionMismatch { expected: self.num_vars, found: values.len() });
        }
        Ok(self
            .terms
            .iter()
            .map(|(mono, c)| mono.iter().fold(c.clone(), |acc, &v| acc * &values[v]))
            .sum())
    }

    /// Renames variable `i` to `map[i]` in a space of `num_vars` variables.
    /// `map` must be injective on the variables that occur.
    pub fn rename(&self, map: &[usize], num_vars: usize) -> Result<MultilinearPoly> {
        let mut out = MultilinearPoly::zero(num_vars, self.degree);
        for (mono, c) in &self.terms {
            let renamed: Monomial = mono.iter().map(|&v| map[v]).collect();
            out.add_term(renamed, c.clone())?;
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: &BigRational) -> MultilinearPoly {
        let mut out = MultilinearPoly::zero(self.num_vars, self.degree);
        if !factor.is_zero() {
            out.terms = self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect();
        }
        out
    }

    pub fn plus(&self, other: &MultilinearPoly) -> Result<MultilinearPoly> {
        check_compatible(self, other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }
}

fn check_compatible(a: &MultilinearPoly, b: &MultilinearPoly) -> Result<()> {
    if a.num_vars != b.num_vars || a.degree != b.degree {
        return Err(Error::InvalidParameter(format!(
            "incompatible polynomials ({} vars, degree {}) vs ({} vars, degree {})",
            a.num_vars, a.degree, b.num_vars, b.degree
        )));
    }
    Ok(())
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    // Heap's algorithm; the parity flips with every swap
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut even = true;
    let mut out = vec![(perm.clone(), even)];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            even = !even;
            out.push((perm.clone(), even));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// The determinant of a `d x d` matrix with its first row replaced by ones,
/// as a degree-`(d-1)` polynomial on `d^2` variables indexed row-major
/// (`row * d + col`). Row-0 variables never occur.
pub fn det_substituted_poly(d: usize) -> Result<MultilinearPoly> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("d = {d} < 2")));
    }
    let mut poly = MultilinearPoly::zero(d * d, d - 1);
    for (perm, even) in permutations(d) {
        let mono: Monomial = (1..d).map(|r| r * d + perm[r]).collect();
        let sign = if even { BigRational::one() } else { -BigRational::one() };
        poly.add_term(mono, sign)?;
    }
    Ok(poly)
}

/// Echelon basis of polynomial rows kept by leading (smallest) monomial.
#[derive(Debug, Default)]
pub struct PolyEchelon {
    rows: BTreeMap<Monomial, BTreeMap<Monomial, BigRational>>,
}

impl PolyEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `terms` after eliminating every pivot monomial.
    fn reduce(&self, terms: &BTreeMap<Monomial, BigRational>) -> BTreeMap<Monomial, BigRational> {
        let mut cur = terms.clone();
        let mut cursor: Option<Monomial> = None;
        loop {
            let lower = match &cursor {
                Some(m) => Bound::Excluded(m.clone()),
                None => Bound::Unbounded,
            };
            let hit = cur
                .range((lower, Bound::Unbounded))
                .find(|(m, _)| self.rows.contains_key(*m))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((pivot, coef)) = hit else {
                return cur;
            };
            for (m, c) in &self.rows[&pivot] {
                let entry = cur.entry(m.clone()).or_insert_with(BigRational::zero);
                *entry -= &coef * c;
                if entry.is_zero() {
                    cur.remove(m);
                }
            }
            cursor = Some(pivot);
        }
    }

    pub fn contains(&self, p: &MultilinearPoly) -> bool {
        self.reduce(&p.terms).is_empty()
    }

    /// Inserts `p` if it is independent of the rows so far.
    pub fn insert(&mut self, p: &MultilinearPoly) -> bool {
        let rest = self.reduce(&p.terms);
        let Some((lead, lead_coef)) = rest.iter().next().map(|(m, c)| (m.clone(), c.clone())) else {
            return false;
        };
        let inv = lead_coef.recip();
        let row = rest.into_iter().map(|(m, c)| (m, c * &inv)).collect();
        self.rows.insert(lead, row);
        true
    }
}

/// Indices of a maximal linearly independent subset of `polys`, chosen
/// greedily in input order.
pub fn poly_rank_basis(polys: &[MultilinearPoly]) -> Result<Vec<usize>> {
    if let Some(first) = polys.first() {
        for p in &polys[1..] {
            check_compatible(first, p)?;
        }
    }
    let mut echelon = PolyEchelon::new();
    Ok(polys
        .iter()
        .enumerate()
        .filter_map(|(i, p)| echelon.insert(p).then_some(i))
        .collect())
}

/// Dense coefficient matrix of `polys` over the union of their monomials.
pub fn coefficient_matrix(polys: &[MultilinearPoly]) -> Vec<Vec<BigRational>> {
    let monomials: Vec<&Monomial> = {
        let mut all: Vec<&Monomial> = polys.iter().flat_map(|p| p.terms.keys()).collect();
        all.sort();
        all.dedup();
        all
    };
    polys
        .iter()
        .map(|p| {
            monomials
                .iter()
                .map(|m| p.terms.get(*m).cloned().unwrap_or_else(BigRational::zero))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{rational, Rationals};
    use crate::algebra::subspace::rank;
    use proptest::prelude::*;

    /// Cofactor expansion along the first row.
    fn det(m: &[Vec<BigRational>]) -> BigRational {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<BigRational>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][c] * det(&minor);
                if c % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }

    fn flatten(m: &[Vec<BigRational>]) -> Vec<BigRational> {
        m.iter().flatten().cloned().collect()
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| rational(x, 1)).collect()).collect()
    }

    #[test]
    fn det_poly_examples() {
        let p = det_substituted_poly(3).unwrap();
        assert_eq!(p.terms().len(), 6);
        for mono in p.terms().keys() {
            assert_eq!(mono.len(), 2);
            let rows: Vec<usize> = mono.iter().map(|v| v / 3).collect();
            let cols: Vec<usize> = mono.iter().map(|v| v % 3).collect();
            assert_eq!(rows, vec![1, 2]);
            assert_ne!(cols[0], cols[1]);
        }
        let id = mat(&[&[1, 1, 1], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(p.evaluate(&flatten(&id)).unwrap(), rational(1, 1));
        let twin_cols = mat(&[&[1, 1, 1], &[4, 4, -2], &[7, 7, 3]]);
        assert!(p.evaluate(&flatten(&twin_cols)).unwrap().is_zero());
        assert!(det_substituted_poly(1).is_err());
    }

    #[test]
    fn det_poly_term_count_is_factorial() {
        for (d, fact) in [(2, 2), (3, 6), (4, 24), (5, 120)] {
            assert_eq!(det_substituted_poly(d).unwrap().terms().len(), fact);
        }
    }

    fn poly(num_vars: usize, terms: &[(&[usize], i64)]) -> MultilinearPoly {
        let mut p = MultilinearPoly::zero(num_vars, terms[0].0.len());
        for (m, c) in terms {
            p.add_term(m.to_vec(), rational(*c, 1)).unwrap();
        }
        p
    }

    #[test]
    fn rank_basis_examples() {
        let p = poly(4, &[(&[0, 1], 1), (&[2, 3], -1)]);
        let q = poly(4, &[(&[0, 2], 3)]);
        assert_eq!(poly_rank_basis(&[p.clone(), p.clone(), q.clone()]).unwrap(), vec![0, 2]);
        assert_eq!(poly_rank_basis(&[]).unwrap(), Vec::<usize>::new());
        let combo = p.scaled(&rational(2, 1)).plus(&q).unwrap();
        assert_eq!(poly_rank_basis(&[p, combo, q]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn incompatible_polys_rejected() {
        let p = poly(4, &[(&[0, 1], 1)]);
        let q = poly(5, &[(&[0, 1], 1)]);
        assert!(poly_rank_basis(&[p, q]).is_err());
    }

    #[test]
    fn cancelling_terms_are_dropped() {
        let mut p = poly(3, &[(&[0, 1], 2)]);
        p.add_term(vec![1, 0], rational(-2, 1)).unwrap();
        assert!(p.is_zero());
        assert!(p.add_term(vec![1, 1], rational(1, 1)).is_err());
    }

    fn matrix_with_ones_row(d: usize) -> impl Strategy<Value = Vec<Vec<BigRational>>> {
        prop::collection::vec(prop::collection::vec((-5i64..=5, 1i64..=3), d), d - 1).prop_map(move |rows| {
            let mut m = vec![vec![rational(1, 1); d]];
            m.extend(rows.into_iter().map(|r| r.into_iter().map(|(a, b)| rational(a, b)).collect()));
            m
        })
    }

    proptest! {
        #[test]
        fn det_poly_matches_cofactor_expansion(
            m in (2usize..=5).prop_flat_map(matrix_with_ones_row)
        ) {
            let d = m.len();
            let p = det_substituted_poly(d).unwrap();
            prop_assert_eq!(p.evaluate(&flatten(&m)).unwrap(), det(&m));
        }

        #[test]
        fn rank_basis_size_is_matrix_rank(
            raw in prop::collection::vec(prop::collection::vec((0usize..10, -2i64..=2), 1..4), 0..8)
        ) {
            // degree-1 polynomials on 10 variables, so collisions are common
            let polys: Vec<MultilinearPoly> = raw.iter().map(|terms| {
                let mut p = MultilinearPoly::zero(10, 1);
                for &(v, c) in terms {
                    p.add_term(vec![v], rational(c, 1)).unwrap();
                }
                p
            }).collect();
            let basis = poly_rank_basis(&polys).unwrap();
            let dense = coefficient_matrix(&polys);
            prop_assert_eq!(basis.len(), rank(&Rationals, &dense));
            let kept: Vec<Vec<BigRational>> = basis.iter().map(|&i| dense[i].clone()).collect();
            for row in &dense {
                let mut with = kept.clone();
                with.push(row.clone());
                prop_assert_eq!(rank(&Rationals, &with), kept.len());
            }
        }
    }
}
