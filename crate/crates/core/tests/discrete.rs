use std::collections::BTreeMap;

use quadrant_phf::discretephf::*;
use quadrant_phf::exactalg::{qf, MPoly, RatFun, Q};
use quadrant_phf::walkmodel::{catalog, UserConformal};
use quadrant_phf::Error;

fn p(t: &[(u32, u32, i64)]) -> MPoly {
    MPoly::from_int_terms(t)
}

fn one_minus(x: bool) -> MPoly {
    if x {
        p(&[(0, 0, 1), (1, 0, -1)])
    } else {
        p(&[(0, 0, 1), (0, 1, -1)])
    }
}

fn simple_fixtures() -> Vec<RatFun> {
    let d = |a: u32, b: u32| &one_minus(true).pow(a) * &one_minus(false).pow(b);
    vec![
        RatFun::new(p(&[(0, 0, -8)]), d(2, 2)).unwrap(),
        RatFun::new(p(&[(0, 1, -32)]), d(2, 4)).unwrap(),
        RatFun::new(p(&[(0, 2, -128)]), d(2, 6)).unwrap(),
    ]
}

#[test]
fn simple_chain_fixtures() {
    let fam = Family::new(catalog::walk("simple").unwrap());
    for (n, want) in simple_fixtures().into_iter().enumerate() {
        assert_eq!(fam.get(n as u32 + 1, 1).unwrap().gf, want, "H_{}^1", n + 1);
    }
}

#[test]
fn simple_closed_form_matches_chain() {
    let w = catalog::walk("simple").unwrap();
    let fam = Family::new(w.clone());
    for m in 1..=4 {
        for k in 1..=3 {
            let c = simple_walk_closed_form(&w, m, k).unwrap();
            assert_eq!(c.gf, fam.get(m, k).unwrap().gf, "m={m} k={k}");
        }
    }
    assert!(matches!(
        simple_walk_closed_form(&catalog::walk("tandem").unwrap(), 1, 1),
        Err(Error::NotSimpleWalk)
    ));
}

#[test]
fn laplacian_chain_both_models() {
    for name in ["simple", "tandem"] {
        let fam = Family::new(catalog::walk(name).unwrap());
        for k in 1..=3 {
            for n in 1..=4 {
                let h = fam.get(n, k).unwrap();
                let d = gf_laplacian(&h.gf, fam.walk().kernel()).unwrap();
                if n == 1 {
                    assert!(d.is_zero());
                } else {
                    assert_eq!(d, fam.get(n - 1, k).unwrap().gf);
                }
                let (a, b) = h.pole_orders();
                assert!(a.max(b) <= h.alpha_bound, "{name} n={n} k={k}");
            }
        }
    }
}

#[test]
fn tandem_harmonic_multiple() {
    let fam = Family::new(catalog::walk("tandem").unwrap());
    // plain GF of (i+1)(j+1)(i+j+2): 2(1 - xy) / ((1-x)^3 (1-y)^3)
    let h = RatFun::new(
        p(&[(0, 0, 2), (1, 1, -2)]),
        &one_minus(true).pow(3) * &one_minus(false).pow(3),
    )
    .unwrap();
    let s = h.series_coeffs(3, 3).unwrap();
    for i in 0..=3i64 {
        for j in 0..=3i64 {
            assert_eq!(
                s[i as usize][j as usize],
                qf((i + 1) * (j + 1) * (i + j + 2), 1)
            );
        }
    }
    let d = decompose_harmonic(&fam, &h, 4).unwrap();
    assert!(d.is_exact());
    assert_eq!(d.coefficients, BTreeMap::from([((1, 1), qf(-8, 81))]));
}

#[test]
fn simple_v1_and_round_trips() {
    let fam = Family::new(catalog::walk("simple").unwrap());
    let v1 = RatFun::new(
        MPoly::one(),
        &one_minus(true).pow(2) * &one_minus(false).pow(2),
    )
    .unwrap();
    let d = decompose_polyharmonic(&fam, &v1, 1, 3).unwrap();
    assert!(d.is_exact());
    assert_eq!(d.coefficients, BTreeMap::from([((1, 1), qf(-1, 8))]));

    let h =
        &fam.get(1, 1).unwrap().gf.scale(&qf(5, 1)) + &fam.get(1, 2).unwrap().gf.scale(&qf(3, 1));
    let d = decompose_harmonic(&fam, &h, 3).unwrap();
    assert_eq!(
        d.coefficients,
        BTreeMap::from([((1, 1), qf(5, 1)), ((1, 2), qf(3, 1))])
    );

    let tfam = Family::new(catalog::walk("tandem").unwrap());
    let h = &tfam.get(2, 1).unwrap().gf.scale(&qf(3, 1)) - &tfam.get(1, 2).unwrap().gf;
    let d = decompose_polyharmonic(&tfam, &h, 2, 3).unwrap();
    assert!(d.is_exact());
    assert_eq!(
        d.coefficients,
        BTreeMap::from([((2, 1), qf(3, 1)), ((1, 2), qf(-1, 1))])
    );
    assert_eq!(d.rebuild(&tfam).unwrap(), h);
    assert_eq!(polyharmonic_order(&h, &tfam, 4).unwrap(), Some(2));
}

#[test]
fn not_polyharmonic_rejected() {
    let fam = Family::new(catalog::walk("simple").unwrap());
    let h = RatFun::new(p(&[(1, 0, 1)]), p(&[(0, 0, 1), (1, 1, -1)])).unwrap();
    assert!(matches!(
        decompose_harmonic(&fam, &h, 2),
        Err(Error::NotHarmonic)
    ));
    assert!(matches!(
        decompose_polyharmonic(&fam, &h, 3, 2),
        Err(Error::NotPolyharmonicOfOrder(3))
    ));
    assert_eq!(polyharmonic_order(&h, &fam, 4).unwrap(), None);
}

#[test]
fn tandem_decoupler_non_uniqueness() {
    let w = catalog::walk("tandem").unwrap();
    let fam = Family::new(w.clone());
    let h = fam.get(1, 1).unwrap();
    let d = decouple(&w, &h).unwrap();
    let om = &w.conformal().unwrap().omega;
    let m = &RatFun::from_poly(p(&[(1, 1, 1)])) * &h.gf;
    let alt = &d.f + &(om * om).scale(&qf(-4, 9));
    let g = check_decoupler(&w, &m, &alt).unwrap();
    assert_ne!(g, d.g);
    let r = as_omega_poly(&w, &(&alt - &d.f), 3).unwrap().unwrap();
    assert_eq!(
        r,
        quadrant_phf::exactalg::UPoly::new(vec![qf(0, 1), qf(0, 1), qf(-4, 9)])
    );
    assert!(check_decoupler(&w, &m, &(&d.f + &RatFun::x())).is_err());
    assert_eq!(as_omega_poly(&w, &RatFun::x(), 3).unwrap(), None);
}

#[test]
fn diagonal_with_user_omega() {
    let base = catalog::walk("diagonal").unwrap();
    assert!(matches!(
        harmonic_basis(&base, 1),
        Err(Error::NoConformalData(_))
    ));
    let omega = RatFun::new(p(&[(1, 0, 1)]), one_minus(true).pow(2)).unwrap();
    let w = base
        .with_conformal(UserConformal {
            omega: Some(omega),
            omega_xplus: None,
            pi_over_theta: Some(2),
        })
        .unwrap();
    let c = w.conformal().unwrap();
    assert_eq!(c.d0, qf(-1, 2));
    let fam = Family::new(w);
    let h = fam.get(1, 1).unwrap();
    let want = RatFun::new(
        p(&[(0, 0, 2)]),
        &one_minus(true).pow(2) * &one_minus(false).pow(2),
    )
    .unwrap();
    assert_eq!(h.gf, want);
    for k in 1..=3 {
        for n in 2..=3 {
            let g = fam.get(n, k).unwrap();
            assert_eq!(
                gf_laplacian(&g.gf, fam.walk().kernel()).unwrap(),
                fam.get(n - 1, k).unwrap().gf
            );
        }
    }
    let combo = &fam.get(1, 2).unwrap().gf.scale(&qf(2, 3)) + &fam.get(1, 3).unwrap().gf;
    let d = decompose_harmonic(&fam, &combo, 4).unwrap();
    assert_eq!(
        d.coefficients,
        BTreeMap::from([((1, 2), qf(2, 3)), ((1, 3), Q::from_integer(1.into()))])
    );
}
