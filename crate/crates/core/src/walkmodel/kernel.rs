use num_traits::Zero;

use super::model::StepModel;
use crate::exactalg::{MPoly, RatFun, UPoly, Var, Q};

/// `K(x,y) = xy (sum p_ij x^-i y^-j - 1)` with both quadratic decompositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    k: MPoly,
    /// coefficients of `y^2, y, 1` as polynomials in `x`
    a: UPoly,
    b: UPoly,
    c: UPoly,
    /// coefficients of `x^2, x, 1` as polynomials in `y`
    at: UPoly,
    bt: UPoly,
    ct: UPoly,
    k00: Q,
}

impl Kernel {
    pub fn new(model: &StepModel) -> Kernel {
        let mut terms: Vec<((u32, u32), Q)> = model
            .steps()
            .map(|(&(i, j), w)| (((1 - i) as u32, (1 - j) as u32), w.clone()))
            .collect();
        terms.push(((1, 1), -Q::from_integer(1.into())));
        let k = MPoly::from_terms(terms);
        let mut cy = k.coeffs_in(Var::Y);
        cy.resize(3, UPoly::zero());
        let mut cx = k.coeffs_in(Var::X);
        cx.resize(3, UPoly::zero());
        let k00 = k.coeff(0, 0);
        Kernel {
            a: cy[2].clone(),
            b: cy[1].clone(),
            c: cy[0].clone(),
            at: cx[2].clone(),
            bt: cx[1].clone(),
            ct: cx[0].clone(),
            k,
            k00,
        }
    }

    pub fn poly(&self) -> &MPoly {
        &self.k
    }

    pub fn ratfun(&self) -> RatFun {
        RatFun::from_poly(self.k.clone())
    }

    /// `(a, b, c)` with `K = a(x) y^2 + b(x) y + c(x)`.
    pub fn in_y(&self) -> (&UPoly, &UPoly, &UPoly) {
        (&self.a, &self.b, &self.c)
    }

    /// `(a~, b~, c~)` with `K = a~(y) x^2 + b~(y) x + c~(y)`.
    pub fn in_x(&self) -> (&UPoly, &UPoly, &UPoly) {
        (&self.at, &self.bt, &self.ct)
    }

    pub fn k00(&self) -> &Q {
        &self.k00
    }

    /// `K(x, 0)` as a polynomial in `x`.
    pub fn at_y0(&self) -> UPoly {
        self.c.clone()
    }

    /// `K(0, y)` as a polynomial in `y`.
    pub fn at_x0(&self) -> UPoly {
        self.ct.clone()
    }

    /// `b~^2 - 4 a~ c~`.
    pub fn discriminant_y(&self) -> UPoly {
        &(&self.bt * &self.bt) - &(&self.at * &self.ct).scale(&Q::from_integer(4.into()))
    }

    /// `b^2 - 4 a c`.
    pub fn discriminant_x(&self) -> UPoly {
        &(&self.b * &self.b) - &(&self.a * &self.c).scale(&Q::from_integer(4.into()))
    }

    pub fn is_zero_at_origin(&self) -> bool {
        self.k00.is_zero()
    }
}

pub fn kernel(model: &StepModel) -> Kernel {
    Kernel::new(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qf;

    #[test]
    fn simple_walk_kernel() {
        let w = qf(1, 4);
        let m = StepModel::new(
            "simple",
            [(1, 0), (0, 1), (-1, 0), (0, -1)].map(|s| (s, w.clone())),
        )
        .unwrap();
        let k = kernel(&m);
        // (x^2 y + x y^2 + x + y)/4 - x y
        let want = MPoly::from_terms([
            ((2, 1), w.clone()),
            ((1, 2), w.clone()),
            ((1, 0), w.clone()),
            ((0, 1), w.clone()),
            ((1, 1), qf(-1, 1)),
        ]);
        assert_eq!(k.poly(), &want);
        assert_eq!(k.at_y0(), UPoly::new(vec![Q::zero(), w.clone()]));
        assert_eq!(k.at_x0(), UPoly::new(vec![Q::zero(), w.clone()]));
        assert!(k.is_zero_at_origin());
    }
}
