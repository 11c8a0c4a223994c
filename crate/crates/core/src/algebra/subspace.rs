//! Subspaces of `F^d` under the standard bilinear form, and the
//! non-self-orthogonality tests built on them.

use crate::algebra::field::{dot, Field, PrimeField, Rationals};
use crate::algebra::FieldSpec;
use crate::error::{Error, Result};

/// Default cap on `q^d` for anything that enumerates `F^d`.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;

/// Reduces `rows` to reduced row-echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref<F: Field>(field: &F, rows: &mut Vec<Vec<F::Elem>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(sel) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field.inv(&rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..rows.len() {
            if i != r && !field.is_zero(&rows[i][c]) {
                let factor = rows[i][c].clone();
                for j in 0..cols {
                    let t = field.mul(&factor, &rows[r][j]);
                    rows[i][j] = field.sub(&rows[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Rank of a list of equal-length rows.
pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// A subspace of `F^d`, stored as a basis in reduced row-echelon form. Two
/// subspaces are equal iff their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient_dim: usize,
    basis: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, d: usize) -> Self {
        Subspace { field, ambient_dim: d, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: F, d: usize) -> Self {
        let basis: Vec<Vec<F::Elem>> = (0..d).map(|i| unit_vector(&field, d, i)).collect();
        Subspace { field, ambient_dim: d, basis, pivots: (0..d).collect() }
    }

    /// Span of `vectors`, each of length `d`.
    pub fn span(field: F, d: usize, vectors: &[Vec<F::Elem>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: v.len() });
        }
        let mut rows = vectors.to_vec();
        let pivots = rref(&field, &mut rows);
        Ok(Subspace { field, ambient_dim: d, basis: rows, pivots })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let f = &self.field;
        let mut rest = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            if !f.is_zero(&rest[c]) {
                let factor = rest[c].clone();
                for (x, b) in rest.iter_mut().zip(row) {
                    *x = f.sub(x, &f.mul(&factor, b));
                }
            }
        }
        rest.iter().all(|x| f.is_zero(x))
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// `W^perp = { x : <x, y> = 0 for all y in W }`, the kernel of the basis
    /// matrix read off the free columns of the echelon form.
    pub fn orthogonal_complement(&self) -> Subspace<F> {
        let f = &self.field;
        let d = self.ambient_dim;
        let mut is_pivot = vec![false; d];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let kernel: Vec<Vec<F::Elem>> = (0..d)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![f.zero(); d];
                x[free] = f.one();
                for (row, &pc) in self.basis.iter().zip(&self.pivots) {
                    x[pc] = f.neg(&row[free]);
                }
                x
            })
            .collect();
        Subspace::span(f.clone(), d, &kernel).expect("kernel vectors have ambient length")
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.field.clone(), self.ambient_dim, &rows).expect("same ambient dimension")
    }

    /// `W ∩ U = (W^perp + U^perp)^perp`; valid because the standard form is
    /// non-degenerate.
    pub fn intersection(&self, other: &Subspace<F>) -> Subspace<F> {
        self.orthogonal_complement()
            .sum(&other.orthogonal_complement())
            .orthogonal_complement()
    }

    /// `W ∩ u^perp`.
    pub fn intersect_perp(&self, u: &[F::Elem]) -> Subspace<F> {
        let line = Subspace::span(self.field.clone(), self.ambient_dim, &[u.to_vec()]).expect("length checked by caller");
        self.intersection(&line.orthogonal_complement())
    }

    /// A non-self-orthogonal vector of `W^perp`, if any. Follows the two
    /// characteristic branches: in characteristic 2 such a vector exists iff
    /// the all-one vector is not in `W`; otherwise iff `W^perp ⊄ W`, with the
    /// witness `x + y` when every basis vector of `W^perp` is self-orthogonal.
    pub fn nonselforth_in_complement(&self) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let perp = self.orthogonal_complement();
        if f.characteristic() == 2 {
            let ones = vec![f.one(); self.ambient_dim];
            if self.contains(&ones) {
                return None;
            }
            // some basis vector of W^perp is not orthogonal to the all-one
            // vector, and in characteristic 2 <x,x> = (sum x_i)^2
            return perp
                .basis
                .iter()
                .find(|b| !f.is_zero(&dot(f, b, &ones)))
                .cloned();
        }
        if let Some(b) = perp.basis.iter().find(|b| !f.is_zero(&dot(f, b, b))) {
            return Some(b.clone());
        }
        let x = perp.basis.iter().find(|b| !self.contains(b))?;
        let y = perp.basis.iter().find(|b| !f.is_zero(&dot(f, x, b)))?;
        Some(x.iter().zip(y).map(|(a, b)| f.add(a, b)).collect())
    }
}

impl Subspace<PrimeField> {
    /// Every vector of the subspace (`q^dim` of them).
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let q = f.p();
        let d = self.ambient_dim;
        let k = self.dim();
        let mut out = Vec::with_capacity((q as usize).pow(k as u32));
        for coeffs in all_tuples(q, k) {
            let mut v = vec![0u32; d];
            for (c, row) in coeffs.iter().zip(&self.basis) {
                for (x, b) in v.iter_mut().zip(row) {
                    *x = f.add(x, &f.mul(c, b));
                }
            }
            out.push(v);
        }
        out
    }

    /// Projective representatives (first nonzero entry 1) of the nonzero
    /// vectors of the subspace.
    pub fn projective_points(&self) -> Vec<Vec<u32>> {
        self.elements().into_iter().filter(|v| is_normalized(v)).collect()
    }

    /// Whether every vector of the subspace is self-orthogonal.
    pub fn all_self_orthogonal(&self) -> bool {
        let f = self.field;
        self.elements().iter().all(|v| f.is_zero(&dot(&f, v, v)))
    }
}

pub fn unit_vector<F: Field>(field: &F, d: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); d];
    v[i] = field.one();
    v
}

/// Decides whether some non-self-orthogonal vector of `F^d` is orthogonal to
/// every input vector, returning one when it exists.
pub fn exists_nonselforth_in_complement<F: Field>(field: &F, d: usize, vectors: &[Vec<F::Elem>]) -> Result<Option<Vec<F::Elem>>> {
    Ok(Subspace::span(field.clone(), d, vectors)?.nonselforth_in_complement())
}

/// All of `{0..q}^k` in lexicographic order.
pub(crate) fn all_tuples(q: u32, k: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (q as u64).pow(k as u32);
    (0..total).map(move |mut idx| {
        let mut t = vec![0u32; k];
        for slot in t.iter_mut().rev() {
            *slot = (idx % q as u64) as u32;
            idx /= q as u64;
        }
        t
    })
}

pub(crate) fn is_normalized(v: &[u32]) -> bool {
    v.iter().find(|&&x| x != 0) == Some(&1)
}

fn check_cap(q: u32, d: usize, cap: u64) -> Result<()> {
    let size = (q as u64).checked_pow(d as u32);
    match size {
        Some(s) if s <= cap => Ok(()),
        _ => Err(Error::CapExceeded(format!("{q}^{d} exceeds enumeration cap {cap}"))),
    }
}

/// Every vector of `GF(p)^d`, lexicographically.
pub fn all_vectors(field: PrimeField, d: usize, cap: u64) -> Result<Vec<Vec<u32>>> {
    check_cap(field.p(), d, cap)?;
    Ok(all_tuples(field.p(), d).collect())
}

/// One representative per scaling class of non-self-orthogonal vectors of
/// `GF(p)^d`, normalized so the first nonzero coordinate is 1.
pub fn enumerate_nonselforth_vectors(field: PrimeField, d: usize, cap: u64) -> Result<Vec<Vec<u32>>> {
    check_cap(field.p(), d, cap)?;
    Ok(all_tuples(field.p(), d)
        .filter(|v| is_normalized(v) && dot(&field, v, v) != 0)
        .collect())
}

/// Every `k`-dimensional subspace of `GF(p)^d`, each visited once through its
/// reduced row-echelon basis.
pub fn enumerate_subspaces(field: PrimeField, d: usize, k: usize, cap: u64) -> Result<Vec<Subspace<PrimeField>>> {
    check_cap(field.p(), d, cap)?;
    if k > d {
        return Ok(Vec::new());
    }
    let count = gaussian_binomial(d, k, field.p() as u64);
    if count > cap as u128 {
        return Err(Error::CapExceeded(format!("{count} subspaces of dimension {k} exceed cap {cap}")));
    }
    let mut out = Vec::new();
    for pivots in combinations(d, k) {
        // free slots: (row r, column c) with c > pivot r and c not a pivot
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((pivots[r] + 1)..d).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        for fill in all_tuples(field.p(), slots.len()) {
            let mut basis = vec![vec![0u32; d]; k];
            for (r, &pc) in pivots.iter().enumerate() {
                basis[r][pc] = 1;
            }
            for (&(r, c), &x) in slots.iter().zip(&fill) {
                basis[r][c] = x;
            }
            out.push(Subspace { field, ambient_dim: d, basis, pivots: pivots.clone() });
        }
    }
    Ok(out)
}

/// Every subspace of `GF(p)^d`, all dimensions.
pub fn enumerate_all_subspaces(field: PrimeField, d: usize, cap: u64) -> Result<Vec<Subspace<PrimeField>>> {
    let mut out = Vec::new();
    for k in 0..=d {
        out.extend(enumerate_subspaces(field, d, k, cap)?);
    }
    Ok(out)
}

/// Increasing `k`-subsets of `0..n`, lexicographically.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// The largest `m` such that every subspace of dimension `< m` has a
/// non-self-orthogonal vector in its orthogonal complement. Exhaustive over
/// subspaces for prime fields; `d` for the rationals, which have no nonzero
/// self-orthogonal vectors.
pub fn compute_m(spec: FieldSpec, d: usize, cap: u64) -> Result<usize> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    let field = match spec {
        FieldSpec::Rational => return Ok(d),
        FieldSpec::Prime(_) => spec.prime_field()?,
    };
    for k in 0..d {
        let failing = enumerate_subspaces(field, d, k, cap)?
            .iter()
            .any(|w| w.nonselforth_in_complement().is_none());
        if failing {
            return Ok(k);
        }
    }
    Ok(d)
}

/// Whether `GF(p)^d` has no nonzero self-orthogonal vector, by exhaustion.
pub fn is_anisotropic(field: PrimeField, d: usize, cap: u64) -> Result<bool> {
    Ok(all_vectors(field, d, cap)?
        .iter()
        .all(|v| v.iter().all(|&x| x == 0) || dot(&field, v, v) != 0))
}

/// The q-binomial coefficient `prod_{i<k} (q^{d-i} - 1) / (q^{k-i} - 1)`:
/// the number of `k`-dimensional subspaces of `GF(q)^d`. Saturates at
/// `u128::MAX`.
pub fn gaussian_binomial(d: usize, k: usize, q: u64) -> u128 {
    if k > d {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        let a = q.checked_pow((d - i) as u32).map(|x| x - 1);
        let b = q.pow((k - i) as u32) - 1;
        match a.and_then(|a| num.checked_mul(a)) {
            Some(x) => num = x,
            None => return u128::MAX,
        }
        den *= b;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Convenience constructor for rational vectors in tests and examples.
pub fn rational_vector(entries: &[i64]) -> Vec<num_rational::BigRational> {
    entries.iter().map(|&x| Rationals.from_i64(x)).collect()
}
