use quadrant_phf::contphf::*;
use quadrant_phf::discretephf::Family;
use quadrant_phf::exactalg::q;
use quadrant_phf::limits::phf_limit;
use quadrant_phf::walkmodel::catalog;

#[test]
fn decoupler_matches_line_difference() {
    for name in ["simple", "tandem"] {
        let sc = Scaling::new(&catalog::walk(name).unwrap()).unwrap();
        for k in 1..=3 {
            let (ls, fs) = cont_chain(&sc, 3, k).unwrap();
            for (l, f) in ls.iter().zip(&fs) {
                let lhs = f
                    .at(&sc.roots.plus)
                    .unwrap()
                    .sub(&f.at(&sc.roots.minus).unwrap());
                assert_eq!(
                    lhs,
                    line_difference(&sc, l).unwrap(),
                    "{name} n={} k={k}",
                    l.n
                );
            }
        }
    }
}

#[test]
fn homogeneous_laplace_transforms() {
    let sc = Scaling::new(&catalog::walk("tandem").unwrap()).unwrap();
    let (ls, _) = cont_chain(&sc, 2, 1).unwrap();
    assert_eq!(ls[0].total_degree(), -5);
    assert_eq!(ls[1].total_degree(), -7);
    assert!(ls.iter().all(|l| l.is_homogeneous() && l.is_real()));
}

#[test]
fn limit_constants_nonzero() {
    for name in ["simple", "tandem"] {
        let w = catalog::walk(name).unwrap();
        let sc = Scaling::new(&w).unwrap();
        let fam = Family::new(w);
        for k in 1..=2 {
            let (ls, _) = cont_chain(&sc, 3, k).unwrap();
            for l in &ls {
                let h = fam.get(l.n, k).unwrap();
                let r = phf_limit(&h, l, sc.pi_over_theta, None).unwrap();
                assert!(r.matched && r.alpha != q(0), "{name} n={} k={k}", l.n);
                assert_eq!(r.exponent, k * sc.pi_over_theta + 2 * l.n);
                // the diagonal substitution sees the pole orders at (1,1)
                let (a, b) = h.pole_orders();
                assert_eq!(r.den_valuation as u32, a + b, "{name} n={} k={k}", l.n);
                assert!(a.max(b) <= h.alpha_bound);
            }
        }
    }
}
