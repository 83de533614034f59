//! Seeded random test data: small Gaussian-rational jets, ambient series and
//! group elements.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{CoeffPoly, Matrix, Scalar, Validity};
use crate::ambient::{AmbientSeries, AmbientSpace, GroupElement};
use crate::error::Result;
use crate::jets::{jet_monomials, BoundaryJet, JetSpace};

/// Numerators and denominators are bounded by 3.
pub struct Sampler {
    rng: ChaCha8Rng,
    seed: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rational(&mut self) -> BigRational {
        let num: i64 = self.rng.gen_range(-3..=3);
        let den: i64 = self.rng.gen_range(1..=3);
        BigRational::new(num.into(), den.into())
    }

    pub fn nonzero_rational(&mut self) -> BigRational {
        loop {
            let r = self.rational();
            if r != BigRational::from_integer(0.into()) {
                return r;
            }
        }
    }

    pub fn scalar(&mut self) -> Scalar {
        Scalar::new(self.rational(), self.rational())
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let s = self.scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// A real jet with each monomial of weight `< valid` present with
    /// probability `density`.
    pub fn real_jet(&mut self, space: &JetSpace, valid: i32, density: f64) -> BoundaryJet {
        let mut f = BoundaryJet::zero(space, Validity::Below(valid));
        for w in 0..valid {
            for (a, b, l) in jet_monomials(space, w) {
                if a > b || !self.rng.gen_bool(density) {
                    continue;
                }
                let c = if a == b { Scalar::from_rational(self.nonzero_rational()) } else { self.nonzero_scalar() };
                f.add_term(&a, &b, l, CoeffPoly::constant(c.conj()));
                if a != b {
                    f.add_term(&b, &a, l, CoeffPoly::constant(c));
                }
            }
        }
        f
    }

    /// A series of the given bidegree with random coefficients on the weight
    /// strata `weights`.
    pub fn ambient(
        &mut self,
        space: &AmbientSpace,
        bidegree: (i32, i32),
        weights: std::ops::Range<i32>,
        valid: Validity,
        density: f64,
    ) -> AmbientSeries {
        let mut f = AmbientSeries::zero(space, bidegree, valid);
        for w in weights {
            for e in space.monomial_basis(bidegree, w) {
                if self.rng.gen_bool(density) {
                    let c = self.nonzero_scalar();
                    f.add_term(e, CoeffPoly::constant(c)).expect("bidegree of basis monomial");
                }
            }
        }
        f
    }

    pub fn unipotent(&mut self, n: usize) -> Result<GroupElement> {
        let a: Vec<Scalar> = (0..n - 1).map(|_| self.scalar()).collect();
        let s = self.rational();
        GroupElement::unipotent(n, &a, &s)
    }

    /// A Cayley transform `(I − S)(I + S)⁻¹` of a random skew-Hermitian `S`.
    pub fn unitary(&mut self, m: usize) -> Matrix {
        let mut x = Matrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                x.set(i, j, self.scalar());
            }
        }
        let mut s = Matrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                s.set(i, j, x.get(i, j) - &x.get(j, i).conj());
            }
        }
        let id = Matrix::identity(m);
        let mut minus = id.clone();
        let mut plus = id;
        for i in 0..m {
            for j in 0..m {
                minus.set(i, j, minus.get(i, j) - s.get(i, j));
                plus.set(i, j, plus.get(i, j) + s.get(i, j));
            }
        }
        minus.mul(&plus.inverse().expect("I + S is invertible for skew-Hermitian S")).expect("square")
    }

    pub fn rotation(&mut self, n: usize) -> Result<GroupElement> {
        let u = self.unitary(n - 1);
        GroupElement::rotation(n, &u)
    }

    pub fn dilation(&mut self, n: usize) -> Result<GroupElement> {
        let lambda = self.nonzero_scalar();
        GroupElement::dilation(n, lambda)
    }

    /// A product of a dilation, a rotation and a unipotent.
    pub fn parabolic(&mut self, n: usize) -> Result<GroupElement> {
        let d = self.dilation(n)?;
        let r = self.rotation(n)?;
        let u = self.unipotent(n)?;
        d.compose(&r)?.compose(&u)
    }

    /// λ = 1 elements: `rotations` rotations followed by `unipotents` unipotents.
    pub fn unit_elements(&mut self, n: usize, rotations: usize, unipotents: usize) -> Result<Vec<GroupElement>> {
        let mut out = Vec::with_capacity(rotations + unipotents);
        for _ in 0..rotations {
            out.push(self.rotation(n)?);
        }
        for _ in 0..unipotents {
            out.push(self.unipotent(n)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let s = JetSpace::new(2).unwrap();
        let a = Sampler::new(7).real_jet(&s, 6, 0.5);
        let b = Sampler::new(7).real_jet(&s, 6, 0.5);
        assert_eq!(a, b);
        assert!(a.is_real());
    }

    #[test]
    fn cayley_rotations_are_unitary() {
        let mut smp = Sampler::new(3);
        for m in 1..=3 {
            let u = smp.unitary(m);
            let uh = u.conj().transpose();
            assert_eq!(u.mul(&uh).unwrap(), Matrix::identity(m));
        }
        assert!(smp.rotation(3).unwrap().in_parabolic());
        assert!(smp.parabolic(3).unwrap().in_parabolic());
    }
}
