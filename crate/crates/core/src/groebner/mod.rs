//! Gröbner bases for ideals and submodules of free modules: Buchberger over
//! field coefficients, strong bases over `Z`-type coefficients. Provides
//! membership with witnesses, normal forms, syzygies and colon ideals.

mod engine;
mod ideal;
mod submodule;
mod vector;

pub use engine::{set_step_budget, step_budget, DEFAULT_STEP_BUDGET};
pub use ideal::Ideal;
pub use submodule::Submodule;
pub use vector::FreeVector;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RingMatrix;
    use crate::rings::{parse_poly, Poly, Ring};

    fn p(r: &Ring, s: &str) -> Poly {
        parse_poly(r, s).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| p(r, g)).collect()).unwrap()
    }

    fn gb(i: &Ideal) -> Vec<String> {
        i.groebner_basis().unwrap().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn lex_basis_from_s_polynomial() {
        let r = Ring::qxy();
        assert_eq!(gb(&ideal(&r, &["x*y - 1", "y^2 - 1"])), ["y^2 - 1", "x - y"]);
        assert_eq!(gb(&ideal(&r, &["x", "y"])), ["y", "x"]);
    }

    #[test]
    fn integer_coefficients_reach_unit_ideal() {
        let zx = Ring::zx();
        assert_eq!(gb(&ideal(&zx, &["2", "3", "x"])), ["1"]);
        let i = ideal(&zx, &["2", "x"]);
        assert!(!i.contains(&p(&zx, "1")).unwrap());
        assert!(i.contains(&p(&zx, "x^2 + 4")).unwrap());
        assert!(!i.contains(&p(&zx, "x + 3")).unwrap());
    }

    #[test]
    fn strong_basis_over_integers() {
        let zx = Ring::zx();
        // (4, 2x) contains 2x but not x; 2x^2 + 4 is in it
        let i = ideal(&zx, &["4", "2*x + 2"]);
        assert!(i.contains(&p(&zx, "2*x^2 - 2")).unwrap());
        assert!(!i.contains(&p(&zx, "x + 1")).unwrap());
        let j = ideal(&zx, &["4", "2*x + 2", "x^2 + 2*x + 1"]);
        let w = j.membership(&p(&zx, "x^2 + 4*x + 3")).unwrap().unwrap();
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn membership_witness_in_column_span() {
        let r = Ring::qxy();
        let m = RingMatrix::parse(&r, &[vec!["x", "y"], vec!["0", "x"]]).unwrap();
        let s = Submodule::from_columns(&m);
        let v = FreeVector::new(&r, vec![p(&r, "0"), p(&r, "x^2")]).unwrap();
        let w = s.membership(&v).unwrap().unwrap();
        assert_eq!(FreeVector::combination(&r, 2, &w, s.generators()).unwrap(), v);
        let e2 = FreeVector::unit(&r, 2, 1);
        assert!(s.membership(&e2).unwrap().is_none());
    }

    #[test]
    fn syzygy_examples() {
        let r = Ring::qxy();
        let s = Submodule::new(
            &r,
            1,
            vec![FreeVector::new(&r, vec![p(&r, "x")]).unwrap(), FreeVector::new(&r, vec![p(&r, "y")]).unwrap()],
        )
        .unwrap();
        let syz = s.syzygies().unwrap();
        assert_eq!(syz.len(), 1);
        let z = &syz[0];
        assert!(z.get(0).is_associate_of(&p(&r, "y")));
        assert_eq!(z.get(1), &-(z.get(0) * &p(&r, "x")).exact_div(&p(&r, "y")).unwrap().unwrap());
        let zx = Ring::zx();
        let m = RingMatrix::parse(&zx, &[vec!["2", "x"], vec!["0", "3"]]).unwrap();
        assert!(Submodule::from_columns(&m).syzygies().unwrap().is_empty());
    }

    #[test]
    fn colon_examples() {
        let r = Ring::qxy();
        let x2 = Submodule::new(&r, 1, vec![FreeVector::new(&r, vec![p(&r, "x^2")]).unwrap()]).unwrap();
        let c = x2.colon(&FreeVector::new(&r, vec![p(&r, "x")]).unwrap()).unwrap();
        assert!(c.equals(&ideal(&r, &["x"])).unwrap());
        let m = RingMatrix::parse(&r, &[vec!["x", "y"], vec!["0", "x"]]).unwrap();
        let s = Submodule::from_columns(&m);
        let c2 = s.colon(&FreeVector::unit(&r, 2, 1)).unwrap();
        assert!(c2.equals(&ideal(&r, &["x^2"])).unwrap());
        let c1 = s.colon(&FreeVector::unit(&r, 2, 0)).unwrap();
        assert!(c1.equals(&ideal(&r, &["x"])).unwrap());
        let inside = s.colon(&FreeVector::new(&r, vec![p(&r, "x"), p(&r, "0")]).unwrap()).unwrap();
        assert!(inside.is_unit_ideal().unwrap());
    }

    #[test]
    fn intersections_and_principal_generators() {
        let z = Ring::integers();
        let i = Ideal::intersection(&z, &[ideal(&z, &["2"]), ideal(&z, &["3"])]).unwrap();
        assert_eq!(i.principal_generator().unwrap().unwrap().to_string(), "6");
        let r = Ring::qxy();
        let i = Ideal::intersection(&r, &[ideal(&r, &["x"]), ideal(&r, &["x^2"])]).unwrap();
        assert!(i.equals(&ideal(&r, &["x^2"])).unwrap());
        assert!(ideal(&r, &["x", "y"]).principal_generator().unwrap().is_none());
    }

    #[test]
    fn reduced_basis_is_idempotent() {
        let r = Ring::qxy();
        let i = ideal(&r, &["x^2*y - y", "x*y^2 + x", "x^3"]);
        let g = i.groebner_basis().unwrap();
        let again = Ideal::new(&r, g.clone()).unwrap().groebner_basis().unwrap();
        assert_eq!(g, again);
    }
}
