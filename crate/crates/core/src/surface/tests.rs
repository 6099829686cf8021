use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

use super::*;
use crate::expr::parse_surface;

fn sphere() -> SurfaceModel {
    parse_surface("(cos u*cos v, cos u*sin v, sin u) on [-pi/2,pi/2]x[0,2*pi]").unwrap()
}

fn helicoid() -> SurfaceModel {
    parse_surface("(sinh u*cos v, sinh u*sin v, v) on [-2,2]x[0,2*pi]").unwrap()
}

fn plane() -> SurfaceModel {
    parse_surface("(1 + u + 2v, 2 - u + v, 3 + u) on [0,1]x[0,1]").unwrap()
}

fn torus() -> SurfaceModel {
    parse_surface("((2 + cos u)*cos v, (2 + cos u)*sin v, sin u) on [0,2pi]x[0,2pi]").unwrap()
}

fn cylinder() -> SurfaceModel {
    parse_surface("(cos v, sin v, u) on [-1,1]x[0,2pi]").unwrap()
}

fn near(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn jet_examples() {
    let j = jets(&plane(), 0.3, 0.4).unwrap();
    for d in [j.xuu, j.xuv, j.xvv, j.xuuu, j.xuuv, j.xuvv, j.xvvv] {
        assert_eq!(d, Vec3::ZERO);
    }
    let j = jets(&sphere(), 0.0, 0.0).unwrap();
    assert_eq!((j.x, j.xu, j.xv), (Vec3::X, Vec3::Z, Vec3::Y));
    let c = 1.5;
    let h = parse_surface("(sinh u*cos v, sinh u*sin v, 1.5v) on [-2,2]x[0,2*pi]").unwrap();
    let j = jets(&h, 0.0, 0.0).unwrap();
    assert_eq!((j.xu, j.xv), (Vec3::X, Vec3::new(0.0, 0.0, c)));
}

#[test]
fn regularity_scans() {
    let r = is_regular_surface(&sphere(), 11, 11).unwrap();
    assert!(!r.regular);
    assert!(near(r.worst.0.abs(), FRAC_PI_2, 1e-12));
    assert!(is_regular_surface(&helicoid(), 20, 20).unwrap().regular);
    let cone = parse_surface("(u cos v, u sin v, u) on [-1,1]x[0,2pi]").unwrap();
    let r = is_regular_surface(&cone, 21, 9).unwrap();
    assert!(!r.regular);
    assert_eq!(r.worst.0, 0.0);
}

#[test]
fn gauss_map_examples() {
    let n0 = gauss_map(&plane(), 0.0, 0.0).unwrap();
    assert_eq!(gauss_map(&plane(), 0.7, 0.2).unwrap(), n0);
    for (u, v) in [(0.3, 1.0), (-1.2, 4.0)] {
        let n = gauss_map(&sphere(), u, v).unwrap();
        let x = jets(&sphere(), u, v).unwrap().x;
        assert!((n + x).norm() < 1e-12, "chart normal points inward");
    }
    let rev = parse_surface("((2 + u^2)*cos v, (2 + u^2)*sin v, u) on [-1,1]x[0,2pi]").unwrap();
    assert!(gauss_map(&rev, 0.4, 0.0).unwrap().y.abs() < 1e-15);
}

#[test]
fn tangent_planes() {
    let t = tangent_plane(&plane(), 0.2, 0.3).unwrap();
    assert!(t.normal.dot(t.xu).abs() < 1e-15 && t.normal.dot(t.xv).abs() < 1e-15);
    let t = tangent_plane(&sphere(), 1.4, 0.3).unwrap();
    assert!((t.normal.cross(t.point)).norm() < 1e-12);
    let t = tangent_plane(&helicoid(), 0.0, 0.0).unwrap();
    assert!((t.normal - Vec3::new(0.0, -1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn fundamental_forms() {
    let i = first_form(&plane(), 0.1, 0.9).unwrap();
    assert_eq!((i.E, i.F, i.G), (3.0, 1.0, 5.0));
    let ii = second_form(&plane(), 0.1, 0.9).unwrap();
    assert_eq!((ii.e, ii.f, ii.g), (0.0, 0.0, 0.0));
    for (u, v) in [(0.4, 2.0), (-0.9, 5.0)] {
        let i = first_form(&sphere(), u, v).unwrap();
        let ii = second_form(&sphere(), u, v).unwrap();
        let c2 = u.cos().powi(2);
        assert!(near(i.E, 1.0, 1e-15) && near(i.F, 0.0, 1e-15) && near(i.G, c2, 1e-15));
        assert!(near(ii.e, 1.0, 1e-14) && near(ii.f, 0.0, 1e-14) && near(ii.g, c2, 1e-14));
    }
    assert!(first_form(&torus(), 0.7, 1.1).unwrap().F.abs() < 1e-15);
}

#[test]
fn parametric_angles() {
    assert!(near(parametric_angle(&sphere(), 0.2, 0.1).unwrap(), FRAC_PI_2, 1e-15));
    let skew = parse_surface("(u + v, v, 0) on [0,1]x[0,1]").unwrap();
    assert!(near(parametric_angle(&skew, 0.5, 0.5).unwrap(), PI / 4.0, 1e-15));
}

#[test]
fn curvature_examples() {
    let b = shape_and_curvatures(&sphere(), 0.3, 1.0).unwrap();
    assert!(near(b.K, 1.0, 1e-12) && near(b.H.abs(), 1.0, 1e-12) && b.umbilic);
    let b = shape_and_curvatures(&plane(), 0.3, 0.4).unwrap();
    assert_eq!((b.K, b.H), (0.0, 0.0));
    for (u, v) in [(0.5, 0.3), (-1.5, 2.0)] {
        let b = shape_and_curvatures(&helicoid(), u, v).unwrap();
        assert!(b.H.abs() < 1e-14 && b.K < 0.0);
        assert!(near(b.K, b.k1 * b.k2, 1e-9) && near(b.H, 0.5 * (b.k1 + b.k2), 1e-9));
    }
    let b = shape_and_curvatures(&torus(), 0.0, 0.4).unwrap();
    assert!(near(b.K, 1.0 / 3.0, 1e-14));
}

#[test]
fn principal_directions_diagonalise_shape() {
    let b = shape_and_curvatures(&torus(), 0.9, 0.2).unwrap();
    for (k, d) in [(b.k1, b.d1), (b.k2, b.d2)] {
        let sd = [
            b.shape[0][0] * d[0] + b.shape[0][1] * d[1],
            b.shape[1][0] * d[0] + b.shape[1][1] * d[1],
        ];
        assert!(near(sd[0], k * d[0], 1e-12) && near(sd[1], k * d[1], 1e-12));
        assert!(near(b.first.apply(d), 1.0, 1e-12));
    }
    assert!(b.k1 >= b.k2);
}

#[test]
fn point_classes() {
    assert_eq!(classify_point(&sphere(), 0.1, 0.1).unwrap(), PointClass::Elliptic);
    assert_eq!(classify_point(&helicoid(), 0.1, 0.1).unwrap(), PointClass::Hyperbolic);
    assert_eq!(classify_point(&plane(), 0.1, 0.1).unwrap(), PointClass::Planar);
    assert_eq!(classify_point(&cylinder(), 0.1, 0.1).unwrap(), PointClass::Parabolic);
}

#[test]
fn normal_and_euler_curvature() {
    for d in [[1.0, 0.0], [0.3, -2.0]] {
        assert!(near(normal_curvature(&sphere(), 0.4, 1.0, d).unwrap().abs(), 1.0, 1e-12));
    }
    let b = shape_and_curvatures(&torus(), 0.9, 0.2).unwrap();
    assert!(near(euler_curvature(&torus(), 0.9, 0.2, 0.0).unwrap(), b.k1, 1e-15));
    assert!(near(euler_curvature(&torus(), 0.9, 0.2, FRAC_PI_2).unwrap(), b.k2, 1e-15));
    // helicoid: e = g = 0, so both coordinate directions are asymptotic
    assert!(normal_curvature(&helicoid(), 0.5, 1.0, [1.0, 0.0]).unwrap().abs() < 1e-15);
    assert!(normal_curvature(&plane(), 0.5, 0.5, [0.0, 0.0]).is_err());
}

#[test]
fn meusnier_spheres() {
    let angles = [0.0, FRAC_PI_6, FRAC_PI_3];
    let dev = meusnier_check(&sphere(), 0.3, 1.0, [1.0, 2.0], &angles).unwrap();
    assert!(dev <= 1e-8);
    let dev = meusnier_check(&cylinder(), 0.2, 1.0, [0.0, 1.0], &angles).unwrap();
    assert!(dev <= 1e-8);
    assert!(matches!(
        meusnier_check(&helicoid(), 0.5, 1.0, [1.0, 0.0], &angles),
        Err(Error::AsymptoticDirection { .. })
    ));
}

#[test]
fn christoffel_examples() {
    let orthonormal = parse_surface("(u, v, 0) on [0,1]x[0,1]").unwrap();
    assert!(christoffel(&orthonormal, 0.5, 0.5)
        .unwrap()
        .six()
        .iter()
        .all(|&g| g == 0.0));
    let u = 0.6;
    let g = christoffel(&sphere(), u, 2.0).unwrap();
    let want = [0.0, 0.0, 0.0, -u.tan(), u.sin() * u.cos(), 0.0];
    for (a, b) in g.six().iter().zip(want) {
        assert!(near(*a, b, 1e-14), "{:?}", g.six());
    }
    assert!(christoffel(&torus(), 0.4, 0.3).unwrap().get(0, 0, 1).abs() < 1e-15);
}

#[test]
fn structure_equations_hold() {
    for s in [sphere(), plane(), helicoid(), torus()] {
        for (u, v) in interior_grid(&s, 3, 3) {
            assert!(koszul_check(&s, u, v).unwrap() <= 1e-8);
            assert!(gauss_weingarten_residual(&s, u, v).unwrap().max() <= 1e-7);
            let k = shape_and_curvatures(&s, u, v).unwrap().K;
            assert!(near(intrinsic_k(&s, u, v).unwrap(), k, 1e-6));
            for a in [0.05, 0.1] {
                let r = normal_identities_check(&s, u, v, a).unwrap();
                assert!(r.gauss_map <= 1e-7 && r.parallel <= 1e-7);
            }
        }
    }
}

#[test]
fn minimal_surfaces() {
    let r = minimality_and_directions(&helicoid(), 6, 6).unwrap();
    assert!(r.is_minimal);
    assert!(r.points.iter().all(|p| p.asymptotic.count() == Some(2)));
    let catenoid = parse_surface("(cosh u*cos v, cosh u*sin v, u) on [-1,1]x[0,2pi]").unwrap();
    assert!(minimality_and_directions(&catenoid, 6, 6).unwrap().is_minimal);
    assert!(!minimality_and_directions(&torus(), 6, 6).unwrap().is_minimal);
    let r = minimality_and_directions(&sphere(), 4, 4).unwrap();
    assert!(r.points.iter().all(|p| p.asymptotic == AsymptoticDirections::None));
    let r = minimality_and_directions(&plane(), 2, 2).unwrap();
    assert!(r.points.iter().all(|p| p.asymptotic == AsymptoticDirections::All));
    let r = minimality_and_directions(&cylinder(), 2, 2).unwrap();
    assert!(r.points.iter().all(|p| p.asymptotic.count() == Some(1)));
}

#[test]
fn asymptotic_directions_annihilate_second_form() {
    let r = minimality_and_directions(&torus(), 5, 7).unwrap();
    for p in &r.points {
        let b = shape_and_curvatures(&torus(), p.u, p.v).unwrap();
        for d in p.asymptotic.directions() {
            assert!(b.second.apply(d).abs() < 1e-12);
            assert!(near(b.first.apply(d), 1.0, 1e-12));
        }
    }
}
