use quadrant_phf::discretephf::Family;
use quadrant_phf::exactalg::{q, Q};
use quadrant_phf::walkcount::*;
use quadrant_phf::walkmodel::catalog;

#[test]
fn dp_matches_closed_form() {
    let t = count_paths(&catalog::catalog_model("simple").unwrap(), 40, false);
    for n in 0..=40 {
        for i in 0..=n {
            for j in 0..=n {
                let want = Q::from_integer(simple_walk_exact(i as u64, j as u64, n as u64));
                assert_eq!(t.get(i, j, n), want, "({i},{j};{n})");
            }
        }
    }
}

#[test]
fn weights_and_mass() {
    let m = catalog::catalog_model("tandem").unwrap();
    let u = count_paths(&m, 12, false);
    let w = count_paths(&m, 12, true);
    for n in 0..=12 {
        let scale = quadrant_phf::exactalg::rational::pow_q(&Q::new(1.into(), 3.into()), n as u32);
        let mut mass = Q::from_integer(0.into());
        for i in 0..=n {
            for j in 0..=n {
                assert_eq!(w.get(i, j, n), u.get(i, j, n) * &scale);
                mass += w.get(i, j, n);
            }
        }
        assert!(mass <= q(1));
    }
}

#[test]
fn simple_leading_ratios() {
    let r = simple_walk_asymptotics(400, &[(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)]).unwrap();
    assert_eq!(r.entries[0].estimate_exact, q(1));
    for e in &r.entries {
        assert!(e.rel_deviation.unwrap() < 1e-3, "{:?}", e);
    }
}

#[test]
fn vp_structure() {
    let fam = Family::new(catalog::walk("simple").unwrap());
    for p in 1..=3 {
        let r = vp_structure_check(&fam, p, 6).unwrap();
        assert!(r.structure_ok, "V_{p}: {:?}", r.decomposition.coefficients);
    }
    let r = vp_structure_check(&fam, 1, 3).unwrap();
    assert_eq!(r.top, Q::new((-1).into(), 8.into()));
}
