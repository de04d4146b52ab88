//! Conjugating r_ξ by r_ζ on Λ and the mod-5 condition for integrality.
//!
//! For ξ = a₁e₁ + a₂e₂ + ν with ν ⊥ {e₁, e₂}, the closed form of the image of
//! e₁ under r_ζ∘r_ξ∘r_ζ is
//!
//! ((18a₁² − 48a₁a₂ + 32a₂² − 25)/25)·e₁ − ((24a₁² − 14a₁a₂ − 24a₂²)/25)·e₂ + c·ν
//!
//! with c = −(2/5)(3a₁ − 4a₂) as usually printed. Composing the matrices gives
//! c = +(2/5)(3a₁ − 4a₂); both are compared.

use serde::Serialize;

use super::{reflection, EvenLattice};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Scalar};

const Q: Field = Field::Rational;

/// Λ-coordinates of ζ = e₁ + 2e₂.
pub fn zeta(rank: usize) -> Vec<i64> {
    let mut z = vec![0; rank];
    z[0] = 1;
    z[1] = 2;
    z
}

#[derive(Clone, Debug, Serialize)]
pub struct ContoReport {
    pub xi: Vec<i64>,
    pub a1: i64,
    pub a2: i64,
    pub xi_zeta: i64,
    pub xi_zeta_mod5: i64,
    pub integral: bool,
    /// Composed image of e₁, Λ-coordinates as exact rationals.
    pub image_e1: Vec<String>,
    pub printed_formula_matches: bool,
    pub corrected_formula_matches: bool,
    /// integral ⟹ (ξ, ζ) ≡ 0 mod 5
    pub implication_holds: bool,
}

/// Closed-form e₁-image; `nu_sign` is the sign in front of (2/5)(3a₁ − 4a₂).
pub fn formula_image(xi: &[i64], nu_sign: i64) -> Vec<Scalar> {
    let (a1, a2) = (xi[0], xi[1]);
    let c1 = Q.ratio(18 * a1 * a1 - 48 * a1 * a2 + 32 * a2 * a2 - 25, 25).expect("nonzero");
    let c2 = Q.ratio(-(24 * a1 * a1 - 14 * a1 * a2 - 24 * a2 * a2), 25).expect("nonzero");
    let cn = Q.ratio(nu_sign * 2 * (3 * a1 - 4 * a2), 5).expect("nonzero");
    xi.iter()
        .enumerate()
        .map(|(i, &x)| match i {
            0 => c1.clone(),
            1 => c2.clone(),
            _ => &cn * &Q.from_i64(x),
        })
        .collect()
}

/// `lambda` must carry e₁, e₂ as its first two basis vectors with {e₁, e₂}^⊥ spanned by the rest.
pub fn conto_check(lambda: &EvenLattice, xi: &[i64]) -> Result<ContoReport> {
    let n = lambda.rank();
    if xi.len() != n {
        return Err(Error::Shape(format!("vector of length {} in rank {n}", xi.len())));
    }
    if lambda.norm(xi) != -2 {
        return Err(Error::Precondition(format!("(xi, xi) = {}, expected -2", lambda.norm(xi))));
    }
    let z = zeta(n);
    let rz = reflection(lambda, &z)?;
    let conj = rz.compose(&reflection(lambda, xi)?).compose(&rz);
    let mut e1 = vec![0; n];
    e1[0] = 1;
    let image = conj.apply_int(&e1);
    let xi_zeta = lambda.pair(xi, &z);
    let integral = conj.is_integral();
    let xi_zeta_mod5 = xi_zeta.rem_euclid(5);
    Ok(ContoReport {
        xi: xi.to_vec(),
        a1: xi[0],
        a2: xi[1],
        xi_zeta,
        xi_zeta_mod5,
        integral,
        printed_formula_matches: formula_image(xi, -1) == image,
        corrected_formula_matches: formula_image(xi, 1) == image,
        image_e1: image.iter().map(|s| s.to_string()).collect(),
        implication_holds: !integral || xi_zeta_mod5 == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::super::LatticeFixture;
    use super::*;

    #[test]
    fn xi_e1() {
        let f = LatticeFixture::new();
        let mut xi = vec![0; 22];
        xi[0] = 1;
        let r = conto_check(&f.lambda, &xi).unwrap();
        assert_eq!(r.image_e1[0], "-7/25");
        assert_eq!(r.image_e1[1], "-24/25");
        assert!(!r.integral);
        assert_eq!(r.xi_zeta, -2);
        assert!(r.printed_formula_matches && r.corrected_formula_matches);
    }

    #[test]
    fn xi_with_nu_part() {
        // ξ = e₁ + 2e₂ + ν, ν = 2h₁ + 2h₂ of square 8.
        let f = LatticeFixture::new();
        let mut xi = vec![0; 22];
        xi[..4].copy_from_slice(&[1, 2, 2, 2]);
        let r = conto_check(&f.lambda, &xi).unwrap();
        assert!(r.integral);
        assert_eq!(r.xi_zeta, -10);
        // e₁ + 4e₂ − 2ν
        assert_eq!(&r.image_e1[..4], &["1", "4", "-4", "-4"]);
        assert!(r.corrected_formula_matches);
        assert!(!r.printed_formula_matches);
    }

    #[test]
    fn rejects_wrong_norm() {
        let f = LatticeFixture::new();
        assert!(matches!(conto_check(&f.lambda, &zeta(22)), Err(Error::Precondition(_))));
    }
}
