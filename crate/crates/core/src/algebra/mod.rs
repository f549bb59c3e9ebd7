//! Exact arithmetic: rationals, sparse multivariate polynomials and
//! normalized rational functions over ℚ.

mod gcd;
mod modp;
pub(crate) mod monomial;
mod mpoly;
mod parse;
mod ratfunc;
mod var;
pub(crate) mod zpoly;

pub use mpoly::{int, rat, MPoly, Rational};
pub use parse::parse_ratfunc;
pub use ratfunc::RatFunc;
pub use var::{VarId, VarSet};

/// Normalized greatest common divisor (graded-lex leading coefficient 1).
/// `poly_gcd(0, b)` is `b` normalized; `poly_gcd(0, 0)` is 0.
pub fn poly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let (vars, _, _) = var::union(a.vars(), b.vars());
    let (_, za) = a.to_zpoly(&vars);
    let (_, zb) = b.to_zpoly(&vars);
    let g = gcd::gcd(&za, &zb);
    if g.is_zero() {
        return MPoly::zero();
    }
    let lc = Rational::from_integer(g.lc().clone());
    MPoly::from_zpoly(&vars, &g, &lc.recip())
}

/// Exact quotient `a / b` when `b` divides `a` in ℚ[vars], else `None`.
pub fn poly_div_exact(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    assert!(!b.is_zero(), "division by the zero polynomial");
    let (vars, _, _) = var::union(a.vars(), b.vars());
    let (la, za) = a.to_zpoly(&vars);
    let (lb, zb) = b.to_zpoly(&vars);
    let (ua, pa) = za.primitive();
    let (ub, pb) = zb.primitive();
    let q = pa.div_exact(&pb)?;
    let scale = Rational::new(ua * lb, ub * la);
    Some(MPoly::from_zpoly(&vars, &q, &scale))
}

/// `ratfunc_make`: the normalized fraction `num / den`.
pub fn ratfunc_make(num: &MPoly, den: &MPoly) -> crate::Result<RatFunc> {
    RatFunc::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }
    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p("z^2-1"), &p("z-1")), p("z-1"));
        assert_eq!(poly_gcd(&p("(z-1)^2"), &p("z*(z-1)")), p("z-1"));
        assert_eq!(poly_gcd(&MPoly::zero(), &p("2*z+4")), p("z+2"));
    }

    #[test]
    fn make_examples() {
        let f = ratfunc_make(&p("z^2-1"), &p("z-1")).unwrap();
        assert_eq!(f.to_string(), "z + 1");
        let g = ratfunc_make(&p("2*z"), &p("4")).unwrap();
        assert_eq!(g.num(), p("1/2*z"));
        assert_eq!(g.den(), MPoly::one());
        assert!(matches!(ratfunc_make(&p("z"), &MPoly::zero()), Err(crate::Error::ZeroDenominator)));
        let x2 = ratfunc_make(&p("(z^2-1)^2"), &p("4*(z^3+δ*z^2+z)")).unwrap();
        assert_eq!(x2.den(), p("z^3+z^2*δ+z"));
        assert_eq!(x2.num(), p("1/4*(z^2-1)^2"));
        // denominator with a non-unit leading coefficient
        let h = ratfunc_make(&p("9"), &p("3*z+1")).unwrap();
        assert_eq!(h.to_string(), "(3)/(z + 1/3)");
        assert_eq!(h.to_string().parse::<RatFunc>().unwrap(), h);
        assert_eq!(h.pow(0), RatFunc::one());
    }

    #[test]
    fn derivative_examples() {
        let z = VarId::z();
        assert_eq!(r("z^3+δ*z^2+z").derivative(&z), r("3*z^2+2*δ*z+1"));
        assert!(r("7/3").derivative(&z).is_zero());
        assert_eq!(r("1/(z-1)").derivative(&z), r("-1/(z-1)^2"));
    }

    #[test]
    fn substitution_and_partial_evaluation() {
        let z = VarId::z();
        let d = VarId::delta();
        let x2 = r("(z^2-1)^2/(4*(z^3+δ*z^2+z))");
        assert_eq!(x2.substitute(&d, &RatFunc::integer(-2)).unwrap(), r("(z+1)^2/(4*z)"));
        assert_eq!(x2.evaluate_partial(&z, &int(1)), Some(RatFunc::zero()));
        assert_eq!(r("z/(z-1)").evaluate_partial(&z, &int(1)), None);
        assert_eq!(r("(z-1)^2/(z-1)").evaluate_partial(&z, &int(1)), Some(RatFunc::zero()));
        let ft = r("z*(z-1)^2");
        assert_eq!(ft.substitute(&z, &RatFunc::var(z.clone())).unwrap(), ft);
        assert!(matches!(
            r("1/(z-δ)").substitute(&z, &RatFunc::var(d.clone())),
            Err(crate::Error::DenominatorVanishes)
        ));
    }

    #[test]
    fn canonical_strings_round_trip() {
        for s in ["(z^2-1)^2/(4*(z^3+δ*z^2+z))", "-3/7*t^2 + t", "1/(t1-t2)", "0"] {
            let f = r(s);
            assert_eq!(r(&f.to_string()), f);
        }
    }
}
