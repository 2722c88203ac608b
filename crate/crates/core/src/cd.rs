//! The Cayley-Dickson tower over ℚ: construction with cached structure
//! constants, element arithmetic, the standard involution and reduced norm,
//! structural predicates, and generated subalgebras with their frames.
//!
//! Basis convention: index bit j is set exactly when doubling step j
//! contributes its generator, so for rank 8 the basis reads
//! 1, x, y, xy, z, xz, yz, (xy)z and the four blocks
//! ⟨1,x⟩, ⟨y,xy⟩, ⟨z,xz⟩, ⟨yz,(xy)z⟩ sit at consecutive index pairs.

use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

use crate::arith::{rat_int, Rational};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::quadform::QuadraticSpace;

/// Structure constants: e_i · e_j = coeff · e_k (products of basis monomials
/// are always monomials in this tower).
type Table = Vec<Vec<(usize, Rational)>>;

#[derive(Debug)]
struct AlgebraData {
    params: Vec<Rational>,
    dim: usize,
    table: Table,
}

/// A Cayley-Dickson algebra over ℚ with parameters (δ₁, …, δ_n), n ≤ 3.
#[derive(Clone, Debug)]
pub struct CDAlgebra {
    inner: Arc<AlgebraData>,
}

pub const MAX_TOWER: usize = 3;

fn build_table(params: &[Rational]) -> Table {
    let mut table: Table = vec![vec![(0, Rational::one())]];
    for delta in params {
        let m = table.len();
        let mut next: Table = vec![vec![(0, Rational::zero()); 2 * m]; 2 * m];
        let conj_sign = |j: usize| if j == 0 { rat_int(1) } else { rat_int(-1) };
        for i in 0..m {
            for j in 0..m {
                let (k, c) = table[i][j].clone();
                // [a_i, 0]·[a_j, 0]
                next[i][j] = (k, c);
                // [0, a_i]·[a_j, 0] = [0, a_i σ(a_j)]
                let (k2, c2) = table[i][j].clone();
                next[m + i][j] = (m + k2, c2 * conj_sign(j));
                // [a_i, 0]·[0, a_j] = [0, a_j a_i]
                let (k3, c3) = table[j][i].clone();
                next[i][m + j] = (m + k3, c3);
                // [0, a_i]·[0, a_j] = [δ σ(a_j) a_i, 0]
                let (k4, c4) = table[j][i].clone();
                next[m + i][m + j] = (k4, c4 * conj_sign(j) * delta);
            }
        }
        table = next;
    }
    table
}

impl CDAlgebra {
    /// Runs the Cayley-Dickson construction over ℚ.
    pub fn construct(params: &[Rational]) -> Result<CDAlgebra> {
        if params.len() > MAX_TOWER {
            return Err(Error::UnsupportedRank(1 << params.len()));
        }
        if params.iter().any(|d| d.is_zero()) {
            return Err(Error::invalid("Cayley-Dickson parameter must be nonzero"));
        }
        let table = build_table(params);
        Ok(CDAlgebra {
            inner: Arc::new(AlgebraData {
                params: params.to_vec(),
                dim: 1 << params.len(),
                table,
            }),
        })
    }

    pub fn construct_ints(params: &[i64]) -> Result<CDAlgebra> {
        let p: Vec<Rational> = params.iter().map(|&d| rat_int(d)).collect();
        CDAlgebra::construct(&p)
    }

    pub fn params(&self) -> &[Rational] {
        &self.inner.params
    }

    /// The rank (ℚ-dimension), a power of two ≤ 8.
    pub fn rank(&self) -> usize {
        self.inner.dim
    }

    pub fn same_algebra(&self, other: &CDAlgebra) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.params == other.inner.params
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<CDElement> {
        if coords.len() != self.inner.dim {
            return Err(Error::invalid(format!(
                "element needs {} coordinates, got {}",
                self.inner.dim,
                coords.len()
            )));
        }
        Ok(CDElement {
            alg: self.clone(),
            coords,
        })
    }

    pub fn element_ints(&self, coords: &[i64]) -> Result<CDElement> {
        self.element(coords.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn zero(&self) -> CDElement {
        CDElement {
            alg: self.clone(),
            coords: vec![Rational::zero(); self.inner.dim],
        }
    }

    pub fn one(&self) -> CDElement {
        self.basis_element(0)
    }

    pub fn basis_element(&self, i: usize) -> CDElement {
        assert!(i < self.inner.dim, "basis index out of range");
        let mut e = self.zero();
        e.coords[i] = Rational::one();
        e
    }

    pub fn basis(&self) -> Vec<CDElement> {
        (0..self.inner.dim).map(|i| self.basis_element(i)).collect()
    }

    fn mul_coords(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.inner.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let (k, ref c) = self.inner.table[i][j];
                if !c.is_zero() {
                    out[k] += ai * bj * c;
                }
            }
        }
        out
    }

    /// Is the multiplication commutative? Checked exhaustively on the basis.
    pub fn is_commutative(&self) -> bool {
        let n = self.inner.dim;
        (0..n).all(|i| (0..n).all(|j| self.inner.table[i][j] == self.inner.table[j][i]))
    }

    /// Is the multiplication associative? Checked exhaustively on the basis.
    pub fn is_associative(&self) -> bool {
        let b = self.basis();
        for x in &b {
            for y in &b {
                let xy = x.mul_raw(y);
                for z in &b {
                    let yz = y.mul_raw(z);
                    if xy.mul_raw(z) != x.mul_raw(&yz) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Alternative laws x(xy) = (x²)y and (yx)x = y(x²), checked for x and y
    /// ranging over sums of at most two basis vectors (enough by linearity in
    /// y and bilinearity of the defect in x).
    pub fn is_alternative(&self) -> bool {
        let n = self.inner.dim;
        let mut probes: Vec<CDElement> = self.basis();
        for i in 0..n {
            for j in i + 1..n {
                let mut e = self.zero();
                e.coords[i] = Rational::one();
                e.coords[j] = Rational::one();
                probes.push(e);
            }
        }
        for x in &probes {
            let xx = x.mul_raw(x);
            for y in &probes {
                let xy = x.mul_raw(y);
                if x.mul_raw(&xy) != xx.mul_raw(y) {
                    return false;
                }
                let yx = y.mul_raw(x);
                if yx.mul_raw(x) != y.mul_raw(&xx) {
                    return false;
                }
            }
        }
        true
    }

    /// Gram matrix of the reduced norm, on the whole algebra or on the
    /// traceless part (the orthogonal complement of 1).
    pub fn norm_form(&self, traceless: bool) -> QuadraticSpace {
        let b = self.basis();
        let idx: Vec<usize> = if traceless {
            (1..self.rank()).collect()
        } else {
            (0..self.rank()).collect()
        };
        let gram = Mat::from_fn(idx.len(), idx.len(), |i, j| {
            b[idx[i]].bilinear_raw(&b[idx[j]])
        });
        QuadraticSpace::new(gram).expect("norm form of a CD-algebra is nondegenerate")
    }
}

/// An element of a CD-algebra in the standard recursive basis.
#[derive(Clone)]
pub struct CDElement {
    alg: CDAlgebra,
    coords: Vec<Rational>,
}

impl PartialEq for CDElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same_algebra(&other.alg) && self.coords == other.coords
    }
}

impl Eq for CDElement {}

impl fmt::Debug for CDElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl CDElement {
    pub fn algebra(&self) -> &CDAlgebra {
        &self.alg
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &CDElement) -> CDElement {
        assert!(self.alg.same_algebra(&other.alg), "mixed algebras");
        CDElement {
            alg: self.alg.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CDElement) -> CDElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CDElement {
        CDElement {
            alg: self.alg.clone(),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> CDElement {
        CDElement {
            alg: self.alg.clone(),
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    pub(crate) fn mul_raw(&self, other: &CDElement) -> CDElement {
        debug_assert!(self.alg.same_algebra(&other.alg));
        CDElement {
            alg: self.alg.clone(),
            coords: self.alg.mul_coords(&self.coords, &other.coords),
        }
    }

    pub fn multiply(&self, other: &CDElement) -> Result<CDElement> {
        if !self.alg.same_algebra(&other.alg) {
            return Err(Error::MixedAlgebras);
        }
        Ok(self.mul_raw(other))
    }

    /// The standard involution: fixes 1, negates the rest of the basis.
    pub fn conjugate(&self) -> CDElement {
        let mut coords: Vec<Rational> = self.coords.iter().map(|a| -a).collect();
        coords[0] = self.coords[0].clone();
        CDElement {
            alg: self.alg.clone(),
            coords,
        }
    }

    /// Reduced norm a·σ(a), a scalar.
    pub fn norm(&self) -> Rational {
        let prod = self.mul_raw(&self.conjugate());
        debug_assert!(
            prod.coords[1..].iter().all(|c| c.is_zero()),
            "norm must be scalar"
        );
        prod.coords[0].clone()
    }

    pub(crate) fn bilinear_raw(&self, other: &CDElement) -> Rational {
        let s = self
            .mul_raw(&other.conjugate())
            .add(&other.mul_raw(&self.conjugate()));
        debug_assert!(s.coords[1..].iter().all(|c| c.is_zero()));
        s.coords[0].clone() / rat_int(2)
    }

    /// The polarized pairing (a, b) = ½(aσ(b) + bσ(a)); satisfies
    /// (a, a) = N(a).
    pub fn bilinear(&self, other: &CDElement) -> Result<Rational> {
        if !self.alg.same_algebra(&other.alg) {
            return Err(Error::MixedAlgebras);
        }
        Ok(self.bilinear_raw(other))
    }

    pub fn is_orthogonal_to(&self, other: &CDElement) -> Result<bool> {
        Ok(self.bilinear(other)?.is_zero())
    }

    /// True when the element is perpendicular to 1.
    pub fn is_traceless(&self) -> bool {
        self.coords[0].is_zero()
    }

    /// σ(a)/N(a); errors on isotropic elements (zero divisors).
    pub fn inverse(&self) -> Result<CDElement> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.conjugate().scale(&n.recip()))
    }
}

/// A frame x (⊥ 1), y (⊥ A_x), z (⊥ A_{x,y}) of anisotropic traceless
/// elements; y and z are optional for partial frames.
#[derive(Clone, Debug)]
pub struct SubalgebraFrame {
    pub x: CDElement,
    pub y: Option<CDElement>,
    pub z: Option<CDElement>,
}

impl SubalgebraFrame {
    pub fn new(x: CDElement, y: Option<CDElement>, z: Option<CDElement>) -> Result<SubalgebraFrame> {
        let alg = x.algebra().clone();
        if x.norm().is_zero() {
            return Err(Error::precondition("N(x) must be nonzero"));
        }
        if !x.is_traceless() {
            return Err(Error::precondition("x must be orthogonal to 1"));
        }
        if let Some(y) = &y {
            if !alg.same_algebra(y.algebra()) {
                return Err(Error::MixedAlgebras);
            }
            if y.norm().is_zero() {
                return Err(Error::precondition("N(y) must be nonzero"));
            }
            if !y.is_traceless() {
                return Err(Error::precondition("y must be orthogonal to 1"));
            }
            if !y.bilinear_raw(&x).is_zero() {
                return Err(Error::precondition("y must be orthogonal to x"));
            }
            if let Some(z) = &z {
                if !alg.same_algebra(z.algebra()) {
                    return Err(Error::MixedAlgebras);
                }
                if z.norm().is_zero() {
                    return Err(Error::precondition("N(z) must be nonzero"));
                }
                if !z.is_traceless() {
                    return Err(Error::precondition("z must be orthogonal to 1"));
                }
                if !z.bilinear_raw(&x).is_zero() {
                    return Err(Error::precondition("z must be orthogonal to x"));
                }
                if !z.bilinear_raw(y).is_zero() {
                    return Err(Error::precondition("z must be orthogonal to y"));
                }
                let xy = x.mul_raw(y);
                if !z.bilinear_raw(&xy).is_zero() {
                    return Err(Error::precondition("z must be orthogonal to xy"));
                }
            }
        } else if z.is_some() {
            return Err(Error::invalid("frame with z but no y"));
        }
        Ok(SubalgebraFrame { x, y, z })
    }

    pub fn full(x: CDElement, y: CDElement, z: CDElement) -> Result<SubalgebraFrame> {
        SubalgebraFrame::new(x, Some(y), Some(z))
    }

    /// The standard frame (x, y, z) = (e₁, e₂, e₄) of a rank-8 algebra.
    pub fn standard(alg: &CDAlgebra) -> Result<SubalgebraFrame> {
        if alg.rank() != 8 {
            return Err(Error::UnsupportedRank(alg.rank()));
        }
        SubalgebraFrame::full(
            alg.basis_element(1),
            alg.basis_element(2),
            alg.basis_element(4),
        )
    }

    pub fn algebra(&self) -> &CDAlgebra {
        self.x.algebra()
    }

    pub fn require_full(&self) -> Result<(&CDElement, &CDElement, &CDElement)> {
        match (&self.y, &self.z) {
            (Some(y), Some(z)) => Ok((&self.x, y, z)),
            _ => Err(Error::precondition("full frame (x, y, z) required")),
        }
    }
}

/// The basis 1, x, y, xy, z, xz, yz, x(yz) attached to a full frame.
pub fn derived_basis(frame: &SubalgebraFrame) -> Result<Vec<CDElement>> {
    let (x, y, z) = frame.require_full()?;
    let one = frame.algebra().one();
    let xy = x.mul_raw(y);
    let xz = x.mul_raw(z);
    let yz = y.mul_raw(z);
    let xyz = x.mul_raw(&yz);
    Ok(vec![
        one,
        x.clone(),
        y.clone(),
        xy,
        z.clone(),
        xz,
        yz,
        xyz,
    ])
}

/// Embedding data of the subalgebras generated by a frame.
#[derive(Clone, Debug)]
pub struct FrameData {
    /// ℚ-basis {1, x} of A_x.
    pub ax_basis: Vec<CDElement>,
    /// Basis of A_x^⊥.
    pub ax_perp: Vec<CDElement>,
    /// ℚ-basis {1, x, y, xy} of A_{x,y}, when y is present.
    pub axy_basis: Option<Vec<CDElement>>,
    /// Basis of A_{x,y}^⊥, when y is present.
    pub axy_perp: Option<Vec<CDElement>>,
}

/// Bases of A_x, A_{x,y} and their orthogonal complements, with the frame
/// relations x² = −N(x) and xy = −yx verified.
pub fn frame_subalgebra(frame: &SubalgebraFrame) -> Result<FrameData> {
    let alg = frame.algebra().clone();
    let x = &frame.x;
    let one = alg.one();
    // x ⊥ 1 forces σ(x) = −x and x² = −N(x)·1
    let xsq = x.mul_raw(x);
    let expect = one.scale(&-x.norm());
    if xsq != expect {
        return Err(Error::precondition("x² ≠ −N(x)·1"));
    }
    let ax_basis = vec![one.clone(), x.clone()];
    let ax_perp = match (&frame.y, &frame.z) {
        (Some(_), Some(_)) => derived_basis(frame)?[2..].to_vec(),
        (Some(y), None) => {
            let xy = x.mul_raw(y);
            let mut v = vec![y.clone(), xy.clone()];
            let span = vec![one.clone(), x.clone(), y.clone(), xy];
            v.extend(orthogonal_complement(&alg, &span));
            v
        }
        _ => orthogonal_complement(&alg, &ax_basis),
    };
    let mut axy_basis = None;
    let mut axy_perp = None;
    if let Some(y) = &frame.y {
        let xy = x.mul_raw(y);
        let yx = y.mul_raw(x);
        if yx != xy.neg() {
            return Err(Error::precondition("xy ≠ −yx"));
        }
        let basis = vec![one, x.clone(), y.clone(), xy];
        axy_perp = Some(match &frame.z {
            Some(z) => {
                let xz = x.mul_raw(z);
                let yz = y.mul_raw(z);
                let xyz = x.mul_raw(&yz);
                vec![z.clone(), xz, yz, xyz]
            }
            None => orthogonal_complement(&alg, &basis),
        });
        axy_basis = Some(basis);
    }
    Ok(FrameData {
        ax_basis,
        ax_perp,
        axy_basis,
        axy_perp,
    })
}

/// Basis of the orthogonal complement of a span, computed exactly.
pub fn orthogonal_complement(alg: &CDAlgebra, span: &[CDElement]) -> Vec<CDElement> {
    let n = alg.rank();
    let basis = alg.basis();
    let m = Mat::from_fn(span.len(), n, |i, j| span[i].bilinear_raw(&basis[j]));
    m.nullspace()
        .into_iter()
        .map(|coords| alg.element(coords).expect("dimension matches"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use rand::{Rng, SeedableRng};

    fn octonions() -> CDAlgebra {
        CDAlgebra::construct_ints(&[-1, -1, -1]).unwrap()
    }

    #[test]
    fn construction_basics() {
        let q = CDAlgebra::construct(&[]).unwrap();
        assert_eq!(q.rank(), 1);
        assert!(CDAlgebra::construct_ints(&[0]).is_err());
        assert!(CDAlgebra::construct_ints(&[1, 1, 1, 1]).is_err());
        let o = octonions();
        assert_eq!(o.rank(), 8);
        // table regenerates identically from params
        let o2 = CDAlgebra::construct(o.params()).unwrap();
        assert_eq!(o.inner.table, o2.inner.table);
    }

    #[test]
    fn quaternion_relations() {
        let h = CDAlgebra::construct_ints(&[-1, -1]).unwrap();
        let x = h.basis_element(1);
        let y = h.basis_element(2);
        let xy = x.mul_raw(&y);
        assert_eq!(xy, h.basis_element(3));
        assert_eq!(x.mul_raw(&x), h.one().neg());
        assert_eq!(y.mul_raw(&x), xy.neg());
        assert_eq!(h.one().mul_raw(&y), y);
    }

    #[test]
    fn octonion_antiassociativity_example() {
        let o = octonions();
        let x = o.basis_element(1);
        let y = o.basis_element(2);
        let z = o.basis_element(4);
        let xy_z = x.mul_raw(&y).mul_raw(&z);
        let x_yz = x.mul_raw(&y.mul_raw(&z));
        assert_eq!(xy_z, x_yz.neg());
    }

    #[test]
    fn mixed_algebras_rejected() {
        let o = octonions();
        let s = CDAlgebra::construct_ints(&[1, -1, -1]).unwrap();
        let a = o.basis_element(1);
        let b = s.basis_element(1);
        assert_eq!(a.multiply(&b), Err(Error::MixedAlgebras));
        assert_eq!(a.bilinear(&b), Err(Error::MixedAlgebras));
    }

    #[test]
    fn norms_and_conjugation() {
        let o = octonions();
        assert_eq!(o.one().conjugate(), o.one());
        assert_eq!(o.one().norm(), rat_int(1));
        let all = o.element_ints(&[1; 8]).unwrap();
        assert_eq!(all.norm(), rat_int(8));
        // distinct basis elements are orthogonal
        for i in 0..8 {
            for j in 0..8 {
                let b = o.basis_element(i).bilinear_raw(&o.basis_element(j));
                assert_eq!(b.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn inverses() {
        let h = CDAlgebra::construct_ints(&[-1, -1]).unwrap();
        let x = h.basis_element(1);
        assert_eq!(x.inverse().unwrap(), x.neg());
        assert_eq!(h.one().inverse().unwrap(), h.one());
        let split = CDAlgebra::construct_ints(&[1]).unwrap();
        let e = split.element_ints(&[1, 1]).unwrap();
        assert_eq!(e.inverse(), Err(Error::ZeroDivisor));
        let a = h.element_ints(&[1, 2, 3, 4]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul_raw(&inv), h.one());
        assert_eq!(inv.mul_raw(&a), h.one());
    }

    #[test]
    fn structural_predicates_by_rank() {
        for d in [-1i64, 1, 2, -2, 3, 5] {
            let a = CDAlgebra::construct_ints(&[d]).unwrap();
            assert!(a.is_commutative() && a.is_associative() && a.is_alternative());
        }
        for d in [[-1i64, -1], [1, 1], [2, 3], [-1, 2], [5, -3], [1, -1]] {
            let a = CDAlgebra::construct_ints(&d).unwrap();
            assert!(!a.is_commutative(), "{d:?}");
            assert!(a.is_associative() && a.is_alternative(), "{d:?}");
        }
        for d in [
            [-1i64, -1, -1],
            [1, -1, -1],
            [1, 1, 1],
            [2, 3, 5],
            [-1, -1, 7],
            [-2, -3, -5],
        ] {
            let a = CDAlgebra::construct_ints(&d).unwrap();
            assert!(!a.is_associative(), "{d:?}");
            assert!(a.is_alternative(), "{d:?}");
        }
    }

    #[test]
    fn norm_form_gram() {
        let o = octonions();
        let q = o.norm_form(false);
        assert_eq!(q.gram(), &Mat::identity(8));
        let q0 = o.norm_form(true);
        assert_eq!(q0.gram(), &Mat::identity(7));
        let split = CDAlgebra::construct_ints(&[1, -1, -1]).unwrap();
        assert_eq!(split.norm_form(false).signature(), (4, 4));
    }

    fn random_element(alg: &CDAlgebra, rng: &mut impl Rng) -> CDElement {
        let coords: Vec<Rational> = (0..alg.rank())
            .map(|_| rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)))
            .collect();
        alg.element(coords).unwrap()
    }

    #[test]
    fn norm_multiplicativity_and_involution_laws() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for params in [vec![-1i64, -1, -1], vec![1, -1, -1], vec![2, 3, -5]] {
            let alg = CDAlgebra::construct_ints(&params).unwrap();
            let basis = alg.basis();
            for a in &basis {
                for b in &basis {
                    assert_eq!(a.mul_raw(b).norm(), a.norm() * b.norm());
                    // σ(ab) = σ(b)σ(a)
                    assert_eq!(
                        a.mul_raw(b).conjugate(),
                        b.conjugate().mul_raw(&a.conjugate())
                    );
                }
                assert_eq!(a.conjugate().conjugate(), *a);
            }
            for _ in 0..100 {
                let a = random_element(&alg, &mut rng);
                let b = random_element(&alg, &mut rng);
                assert_eq!(a.mul_raw(&b).norm(), a.norm() * b.norm());
                // a + σ(a) and a·σ(a) are scalars
                let tr = a.add(&a.conjugate());
                assert!(tr.coords()[1..].iter().all(|c| c.is_zero()));
            }
        }
    }

    #[test]
    fn traceless_squares() {
        let o = octonions();
        let x = o.element_ints(&[0, 1, 1, 0, 2, 0, 0, 0]).unwrap();
        assert!(x.is_traceless());
        assert_eq!(x.conjugate(), x.neg());
        assert_eq!(x.mul_raw(&x), o.one().scale(&-x.norm()));
    }

    #[test]
    fn frames_and_subalgebras() {
        let o = octonions();
        let f = SubalgebraFrame::standard(&o).unwrap();
        let data = frame_subalgebra(&f).unwrap();
        assert_eq!(data.ax_basis, vec![o.basis_element(0), o.basis_element(1)]);
        let perp = data.ax_perp.clone();
        assert_eq!(perp.len(), 6);
        assert_eq!(
            perp,
            vec![
                o.basis_element(2),
                o.basis_element(3),
                o.basis_element(4),
                o.basis_element(5),
                o.basis_element(6),
                o.basis_element(7).neg(), // x(yz) = −(xy)z
            ]
        );
        assert_eq!(data.axy_perp.unwrap().len(), 4);

        // x = e1 + e2 has norm 2, A_x ≅ ℚ(√−2)
        let x = o.element_ints(&[0, 1, 1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(x.norm(), rat_int(2));
        let f = SubalgebraFrame::new(x.clone(), Some(o.basis_element(4)), None).unwrap();
        let data = frame_subalgebra(&f).unwrap();
        assert_eq!(data.ax_basis[1], x);
        assert_eq!(x.mul_raw(&x), o.one().scale(&rat_int(-2)));

        // y not orthogonal to A_x is rejected with a named precondition
        let bad = SubalgebraFrame::new(
            o.basis_element(1),
            Some(o.element_ints(&[0, 1, 1, 0, 0, 0, 0, 0]).unwrap()),
            None,
        );
        match bad {
            Err(Error::Precondition(msg)) => assert!(msg.contains("orthogonal to x")),
            other => panic!("expected precondition error, got {other:?}"),
        }
    }

    #[test]
    fn partial_frame_complement() {
        let o = octonions();
        let x = o.element_ints(&[0, 1, 1, 0, 2, 0, 0, 0]).unwrap();
        let f = SubalgebraFrame::new(x.clone(), None, None).unwrap();
        let data = frame_subalgebra(&f).unwrap();
        assert_eq!(data.ax_perp.len(), 6);
        for v in &data.ax_perp {
            assert!(v.bilinear_raw(&o.one()).is_zero());
            assert!(v.bilinear_raw(&x).is_zero());
        }
    }
}
