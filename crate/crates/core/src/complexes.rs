//! Finitely supported cochain complexes of finite-dimensional vector spaces.
//!
//! Grading is cohomological: the differential `d(n)` maps degree `n` to
//! degree `n + 1`. Shifts follow `(M[s])^n = M^{n+s}` with differential
//! `(-1)^s d`, and the mapping cone of `f: A -> B` is
//! `cone^n = A^{n+1} ⊕ B^n` with differential `[[-d_A, 0], [f, d_B]]`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

pub type Degree = i32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    field: Field,
    dims: BTreeMap<Degree, usize>,
    diffs: BTreeMap<Degree, Matrix>,
}

/// A defect found by [`Complex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexIssue {
    /// `d(n)` does not have shape `dim(n+1) x dim(n)`.
    Shape {
        degree: Degree,
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// `d(n+1) d(n) != 0`.
    SquareNonzero { degree: Degree },
    FieldMismatch { degree: Degree },
}

impl Complex {
    /// Builds a complex without checking it; see [`Complex::validate`].
    pub fn new(
        field: Field,
        dims: BTreeMap<Degree, usize>,
        diffs: BTreeMap<Degree, Matrix>,
    ) -> Complex {
        let dims = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let diffs = diffs
            .into_iter()
            .filter(|(_, m)| m.rows() > 0 && m.cols() > 0 && !m.is_zero())
            .collect();
        Complex { field, dims, diffs }
    }

    pub fn zero(field: Field) -> Complex {
        Complex::new(field, BTreeMap::new(), BTreeMap::new())
    }

    /// `k^dim` placed in a single degree.
    pub fn concentrated(field: Field, degree: Degree, dim: usize) -> Complex {
        Complex::new(field, BTreeMap::from([(degree, dim)]), BTreeMap::new())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self, n: Degree) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<Degree, usize> {
        &self.dims
    }

    /// The differential out of degree `n`, as a `dim(n+1) x dim(n)` matrix.
    pub fn d(&self, n: Degree) -> Matrix {
        match self.diffs.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.field, self.dim(n + 1), self.dim(n)),
        }
    }

    pub fn support(&self) -> Vec<Degree> {
        self.dims.keys().copied().collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Degrees in which homology or differentials can be nonzero, padded by
    /// one on each side of the support.
    pub fn represented_degrees(&self) -> Vec<Degree> {
        match (self.dims.keys().next(), self.dims.keys().next_back()) {
            (Some(&lo), Some(&hi)) => (lo - 1..=hi + 1).collect(),
            _ => Vec::new(),
        }
    }

    pub fn validate(&self) -> Vec<ComplexIssue> {
        let mut issues = Vec::new();
        let mut degrees: BTreeSet<Degree> = self.diffs.keys().copied().collect();
        degrees.extend(self.dims.keys());
        for &n in &degrees {
            let d = self.d(n);
            let expected = (self.dim(n + 1), self.dim(n));
            if (d.rows(), d.cols()) != expected {
                issues.push(ComplexIssue::Shape {
                    degree: n,
                    expected,
                    found: (d.rows(), d.cols()),
                });
            } else if d.field() != self.field {
                issues.push(ComplexIssue::FieldMismatch { degree: n });
            }
        }
        if !issues.is_empty() {
            return issues;
        }
        for &n in &degrees {
            if !self.d(n + 1).mul(&self.d(n)).is_zero() {
                issues.push(ComplexIssue::SquareNonzero { degree: n });
            }
        }
        issues
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn homology(&self, n: Degree) -> Homology {
        let cycles = self.d(n).kernel();
        let boundary = self.d(n - 1);
        // Extend a basis of the boundaries to one of the cycles; the
        // added cycles represent homology.
        let stacked = Matrix::from_columns(self.field, self.dim(n), &cycles);
        let combined = boundary.hstack(&stacked);
        let pivots = combined.echelon().pivots;
        let representatives: Vec<Vec<Scalar>> = pivots
            .iter()
            .filter(|&&p| p >= boundary.cols())
            .map(|&p| cycles[p - boundary.cols()].clone())
            .collect();
        Homology {
            degree: n,
            dim: representatives.len(),
            ambient: self.dim(n),
            boundary,
            cycles,
            representatives,
        }
    }

    /// Homology dimensions in every represented degree.
    pub fn betti(&self) -> BTreeMap<Degree, usize> {
        self.represented_degrees()
            .into_iter()
            .map(|n| (n, self.homology(n).dim))
            .filter(|&(_, d)| d > 0)
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti().is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .map(|(&n, &d)| if n.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    pub fn shift(&self, s: Degree) -> Complex {
        let sign = self.field.one().signed(s as i64);
        Complex::new(
            self.field,
            self.dims.iter().map(|(&n, &d)| (n - s, d)).collect(),
            self.diffs.iter().map(|(&n, m)| (n - s, m.scale(&sign))).collect(),
        )
    }

    pub fn identity_map(&self) -> ChainMap {
        ChainMap {
            source: self.clone(),
            target: self.clone(),
            degree: 0,
            components: self
                .dims
                .iter()
                .map(|(&n, &d)| (n, Matrix::identity(self.field, d)))
                .collect(),
        }
    }
}

/// `H^n` of a complex, with cycle representatives of a basis.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: Degree,
    pub dim: usize,
    ambient: usize,
    boundary: Matrix,
    pub cycles: Vec<Vec<Scalar>>,
    pub representatives: Vec<Vec<Scalar>>,
}

impl Homology {
    /// Coordinates of the class of cycle `z` in the representative basis.
    /// Returns `None` if `z` is not a cycle of this degree.
    pub fn classify(&self, z: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(z.len(), self.ambient);
        let field = self.boundary.field();
        let reps = Matrix::from_columns(field, self.ambient, &self.representatives);
        let system = self.boundary.hstack(&reps);
        let x = system.solve(z)?;
        Some(x[self.boundary.cols()..].to_vec())
    }

    pub fn is_boundary(&self, z: &[Scalar]) -> bool {
        self.boundary.solve(z).is_some()
    }

    /// A vector whose class has the given coordinates.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let field = self.boundary.field();
        let mut v = field.zeros(self.ambient);
        for (c, r) in coords.iter().zip(&self.representatives) {
            crate::field::axpy(&mut v, c, r);
        }
        v
    }
}

/// A homogeneous map of degree `degree` between complexes; component `n`
/// maps `source^n` to `target^{n+degree}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: Complex,
    pub target: Complex,
    pub degree: Degree,
    pub components: BTreeMap<Degree, Matrix>,
}

impl ChainMap {
    pub fn new(
        source: Complex,
        target: Complex,
        degree: Degree,
        components: BTreeMap<Degree, Matrix>,
    ) -> ChainMap {
        ChainMap {
            source,
            target,
            degree,
            components,
        }
    }

    pub fn zero(source: Complex, target: Complex, degree: Degree) -> ChainMap {
        ChainMap::new(source, target, degree, BTreeMap::new())
    }

    pub fn component(&self, n: Degree) -> Matrix {
        match self.components.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zeros(
                self.source.field(),
                self.target.dim(n + self.degree),
                self.source.dim(n),
            ),
        }
    }

    fn degrees(&self) -> BTreeSet<Degree> {
        let mut out: BTreeSet<Degree> = self.source.represented_degrees().into_iter().collect();
        out.extend(
            self.target
                .represented_degrees()
                .into_iter()
                .map(|n| n - self.degree),
        );
        out
    }

    /// `d f = (-1)^s f d` in every degree, with `s` the map's degree.
    pub fn is_closed(&self) -> bool {
        let sign = self.source.field().one().signed(self.degree as i64);
        self.degrees().into_iter().all(|n| {
            let lhs = self.target.d(n + self.degree).mul(&self.component(n));
            let rhs = self.component(n + 1).mul(&self.source.d(n)).scale(&sign);
            lhs == rhs
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        let components = other
            .degrees()
            .into_iter()
            .map(|n| (n, self.component(n + other.degree).mul(&other.component(n))))
            .filter(|(_, m)| !m.is_zero())
            .collect();
        ChainMap::new(
            other.source.clone(),
            self.target.clone(),
            self.degree + other.degree,
            components,
        )
    }

    /// Matrix of the induced map `H^n(source) -> H^{n+s}(target)`.
    pub fn induced_on_homology(&self, n: Degree) -> Matrix {
        let hs = self.source.homology(n);
        let ht = self.target.homology(n + self.degree);
        let f = self.component(n);
        let cols: Vec<Vec<Scalar>> = hs
            .representatives
            .iter()
            .map(|r| ht.classify(&f.mul_vec(r)).expect("closed map sends cycles to cycles"))
            .collect();
        Matrix::from_columns(self.source.field(), ht.dim, &cols)
    }

    /// Degree-0 closed map inducing isomorphisms on all homology groups.
    pub fn is_quasi_isomorphism(&self) -> bool {
        if self.degree != 0 || !self.is_closed() {
            return false;
        }
        self.degrees().into_iter().all(|n| {
            let m = self.induced_on_homology(n);
            m.rows() == m.cols() && m.is_invertible()
        })
    }

    pub fn is_degreewise_surjective(&self) -> bool {
        self.target
            .support()
            .into_iter()
            .all(|m| self.component(m - self.degree).rank() == self.target.dim(m))
    }
}

/// The mapping cone with its canonical maps `target -> cone -> source[1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: Complex,
    pub injection: ChainMap,
    pub projection: ChainMap,
}

pub fn shift(c: &Complex, s: Degree) -> Complex {
    c.shift(s)
}

pub fn cone(f: &ChainMap) -> Result<Cone> {
    if f.degree != 0 || !f.is_closed() {
        return Err(Error::NotClosedDegreeZero("cone input".into()));
    }
    let field = f.source.field();
    let (a, b) = (&f.source, &f.target);
    let mut degrees: BTreeSet<Degree> = a.support().into_iter().map(|n| n - 1).collect();
    degrees.extend(b.support());
    let dims: BTreeMap<Degree, usize> = degrees.iter().map(|&n| (n, a.dim(n + 1) + b.dim(n))).collect();
    let mut diffs = BTreeMap::new();
    for &n in &degrees {
        let (a1, bn) = (a.dim(n + 1), b.dim(n));
        let (a2, bn1) = (a.dim(n + 2), b.dim(n + 1));
        let mut m = Matrix::zeros(field, a2 + bn1, a1 + bn);
        m.put_block(0, 0, &a.d(n + 1).neg());
        m.put_block(a2, 0, &f.component(n + 1));
        m.put_block(a2, a1, &b.d(n));
        diffs.insert(n, m);
    }
    let complex = Complex::new(field, dims, diffs);
    let shifted = a.shift(1);
    let mut inj = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for &n in &degrees {
        let (a1, bn) = (a.dim(n + 1), b.dim(n));
        let mut i = Matrix::zeros(field, a1 + bn, bn);
        i.put_block(a1, 0, &Matrix::identity(field, bn));
        inj.insert(n, i);
        let mut p = Matrix::zeros(field, a1, a1 + bn);
        p.put_block(0, 0, &Matrix::identity(field, a1));
        proj.insert(n, p);
    }
    Ok(Cone {
        injection: ChainMap::new(b.clone(), complex.clone(), 0, inj),
        projection: ChainMap::new(complex.clone(), shifted, 0, proj),
        complex,
    })
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub complex: Complex,
    pub injections: Vec<ChainMap>,
    pub projections: Vec<ChainMap>,
}

pub fn direct_sum(field: Field, cs: &[Complex]) -> Result<DirectSum> {
    if let Some(c) = cs.iter().find(|c| c.field() != field) {
        return Err(Error::FieldMismatch {
            expected: field,
            found: c.field(),
        });
    }
    let degrees: BTreeSet<Degree> = cs.iter().flat_map(|c| c.support()).collect();
    let dims: BTreeMap<Degree, usize> = degrees
        .iter()
        .map(|&n| (n, cs.iter().map(|c| c.dim(n)).sum()))
        .collect();
    let diffs = degrees
        .iter()
        .map(|&n| {
            let blocks: Vec<Matrix> = cs.iter().map(|c| c.d(n)).collect();
            (n, Matrix::block_diag(field, &blocks))
        })
        .collect();
    let complex = Complex::new(field, dims, diffs);
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for (k, c) in cs.iter().enumerate() {
        let mut inj = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for &n in &degrees {
            let offset: usize = cs[..k].iter().map(|x| x.dim(n)).sum();
            let mut i = Matrix::zeros(field, complex.dim(n), c.dim(n));
            i.put_block(offset, 0, &Matrix::identity(field, c.dim(n)));
            proj.insert(n, i.transpose());
            inj.insert(n, i);
        }
        injections.push(ChainMap::new(c.clone(), complex.clone(), 0, inj));
        projections.push(ChainMap::new(complex.clone(), c.clone(), 0, proj));
    }
    Ok(DirectSum {
        complex,
        injections,
        projections,
    })
}

/// The homotopy pullback of `u: A -> C` and `v: B -> C` with its
/// projections to `A` and `B`.
#[derive(Clone, Debug)]
pub struct HomotopyPullback {
    pub complex: Complex,
    pub to_a: ChainMap,
    pub to_b: ChainMap,
}

/// `P^n = A^n ⊕ B^n ⊕ C^{n-1}` with `d(a, b, c) = (da, db, v(b) - u(a) - dc)`.
pub fn homotopy_pullback(u: &ChainMap, v: &ChainMap) -> Result<HomotopyPullback> {
    if u.target != v.target {
        return Err(Error::TargetMismatch);
    }
    for (name, m) in [("u", u), ("v", v)] {
        if m.degree != 0 || !m.is_closed() {
            return Err(Error::NotClosedDegreeZero(name.into()));
        }
    }
    let field = u.source.field();
    let (a, b, c) = (&u.source, &v.source, &u.target);
    let mut degrees: BTreeSet<Degree> = a.support().into_iter().collect();
    degrees.extend(b.support());
    degrees.extend(c.support().into_iter().map(|n| n + 1));
    let dim = |n: Degree| a.dim(n) + b.dim(n) + c.dim(n - 1);
    let dims: BTreeMap<Degree, usize> = degrees.iter().map(|&n| (n, dim(n))).collect();
    let mut diffs = BTreeMap::new();
    for &n in &degrees {
        let (an, bn, cn) = (a.dim(n), b.dim(n), c.dim(n - 1));
        let (an1, bn1) = (a.dim(n + 1), b.dim(n + 1));
        let mut m = Matrix::zeros(field, dim(n + 1), an + bn + cn);
        m.put_block(0, 0, &a.d(n));
        m.put_block(an1, an, &b.d(n));
        let row = an1 + bn1;
        m.put_block(row, 0, &u.component(n).neg());
        m.put_block(row, an, &v.component(n));
        m.put_block(row, an + bn, &c.d(n - 1).neg());
        diffs.insert(n, m);
    }
    let complex = Complex::new(field, dims, diffs);
    let mut pa = BTreeMap::new();
    let mut pb = BTreeMap::new();
    for &n in &degrees {
        let (an, bn, cn) = (a.dim(n), b.dim(n), c.dim(n - 1));
        let mut x = Matrix::zeros(field, an, an + bn + cn);
        x.put_block(0, 0, &Matrix::identity(field, an));
        pa.insert(n, x);
        let mut y = Matrix::zeros(field, bn, an + bn + cn);
        y.put_block(0, an, &Matrix::identity(field, bn));
        pb.insert(n, y);
    }
    Ok(HomotopyPullback {
        to_a: ChainMap::new(complex.clone(), a.clone(), 0, pa),
        to_b: ChainMap::new(complex.clone(), b.clone(), 0, pb),
        complex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn two_term(field: Field, d: i64) -> Complex {
        Complex::new(
            field,
            BTreeMap::from([(0, 1), (1, 1)]),
            BTreeMap::from([(0, Matrix::from_i64_rows(field, &[&[d]]))]),
        )
    }

    fn scalar_map(field: Field, c: i64) -> ChainMap {
        let k = Complex::concentrated(field, 0, 1);
        ChainMap::new(
            k.clone(),
            k,
            0,
            BTreeMap::from([(0, Matrix::from_i64_rows(field, &[&[c]]))]),
        )
    }

    #[test]
    fn validation_examples() {
        assert!(Complex::zero(q()).is_valid());
        assert!(two_term(q(), 1).is_valid());
        let bad = Complex::new(
            q(),
            BTreeMap::from([(0, 1), (1, 1), (2, 1)]),
            BTreeMap::from([
                (0, Matrix::from_i64_rows(q(), &[&[1]])),
                (1, Matrix::from_i64_rows(q(), &[&[1]])),
            ]),
        );
        assert_eq!(bad.validate(), vec![ComplexIssue::SquareNonzero { degree: 0 }]);
        let misshapen = Complex::new(
            q(),
            BTreeMap::from([(0, 2), (1, 1)]),
            BTreeMap::from([(0, Matrix::from_i64_rows(q(), &[&[1]]))]),
        );
        assert!(matches!(misshapen.validate()[0], ComplexIssue::Shape { degree: 0, .. }));
    }

    #[test]
    fn homology_examples() {
        let z = Complex::zero(q());
        assert_eq!(z.homology(3).dim, 0);
        let acyclic = two_term(q(), 1);
        assert_eq!(acyclic.homology(0).dim, 0);
        assert_eq!(acyclic.homology(1).dim, 0);
        let f5 = Field::prime(5).unwrap();
        assert_eq!(two_term(f5, 0).homology(0).dim, 1);
    }

    #[test]
    fn shift_examples() {
        let c = Complex::concentrated(q(), 0, 1);
        assert_eq!(c.shift(0), c);
        assert_eq!(c.shift(1).support(), vec![-1]);
        let t = two_term(q(), 3);
        assert_eq!(t.shift(1).shift(-1), t);
        assert_eq!(t.shift(1).d(-1), Matrix::from_i64_rows(q(), &[&[-3]]));
    }

    #[test]
    fn cone_examples() {
        let id = scalar_map(q(), 1);
        assert!(cone(&id).unwrap().complex.is_acyclic());
        let two = scalar_map(q(), 2);
        assert!(cone(&two).unwrap().complex.is_acyclic());
        let f2 = Field::prime(2).unwrap();
        let c = cone(&scalar_map(f2, 2)).unwrap().complex;
        assert_eq!(c.homology(-1).dim, 1);
        assert_eq!(c.homology(0).dim, 1);
        let zero = scalar_map(q(), 0);
        let cz = cone(&zero).unwrap();
        assert_eq!(cz.complex.dim(-1), 1);
        assert_eq!(cz.complex.dim(0), 1);
        assert!(cz.complex.d(-1).is_zero());
        assert!(cz.injection.is_closed() && cz.projection.is_closed());
        assert!(matches!(
            cone(&ChainMap::zero(z(), z(), 1)),
            Err(Error::NotClosedDegreeZero(_))
        ));
    }

    fn z() -> Complex {
        Complex::zero(q())
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(direct_sum(q(), &[]).unwrap().complex, Complex::zero(q()));
        let t = two_term(q(), 2);
        assert_eq!(direct_sum(q(), std::slice::from_ref(&t)).unwrap().complex, t);
        let f5 = Field::prime(5).unwrap();
        assert!(direct_sum(q(), &[two_term(f5, 1)]).is_err());
    }

    #[test]
    fn pullback_of_identities() {
        let k = Complex::concentrated(q(), 0, 1);
        let id = k.identity_map();
        let p = homotopy_pullback(&id, &id).unwrap();
        assert!(p.complex.is_valid());
        assert_eq!(p.complex.homology(0).dim, 1);
        assert!(p.to_b.is_quasi_isomorphism());
        assert!(p.to_a.is_closed());
        let zero = Complex::zero(q());
        let u = ChainMap::zero(k.clone(), zero.clone(), 0);
        let p = homotopy_pullback(&u, &u).unwrap();
        assert_eq!(p.complex.dim(0), 2);
        assert!(p.complex.d(0).is_zero());
        let other = ChainMap::zero(k.clone(), k.clone(), 0);
        assert_eq!(homotopy_pullback(&u, &other).unwrap_err(), Error::TargetMismatch);
    }
}
