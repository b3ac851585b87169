//! Values computed independently with a general-purpose CAS (sympy) and
//! frozen here.

use workbench::cm::{charpoly, cm_psi, cm_universal_poly, CmPoint};
use workbench::matrix::{det_exact, rdet, RatMatrix};
use workbench::quasiexp::QExpSpace;
use workbench::rational::{frac, parse, q};
use workbench::upoly::{RatFn, UPoly};
use workbench::Q;

fn m(rows: &[&[&str]]) -> RatMatrix {
    RatMatrix::from_strings(&rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect::<Vec<_>>()).unwrap()
}

fn up(c: &[Q]) -> UPoly {
    UPoly::new(c.to_vec())
}

fn point() -> CmPoint {
    CmPoint::new(m(&[&["0", "-2/3"], &["2/3", "1"]]), m(&[&["1", "0"], &["0", "-1/2"]])).unwrap()
}

#[test]
fn determinant_and_charpoly_4x4() {
    let a = m(&[&["3/2", "-1", "2/5", "7"], &["0", "-1/3", "4", "1"], &["2", "5/7", "-1", "0"], &["1", "1", "1", "1/9"]]);
    assert_eq!(det_exact(&a).unwrap(), frac(-72187, 1890));
    assert_eq!(rdet(&a).unwrap(), frac(-72187, 1890));
    assert_eq!(
        charpoly(&a).unwrap(),
        up(&[frac(-72187, 1890), frac(-1409, 135), frac(-25147, 1890), frac(-5, 18), q(1)])
    );
}

#[test]
fn cm_polynomial_at_a_point() {
    let pc = cm_universal_poly(&point()).unwrap();
    // (deg_u, deg_v, coefficient)
    let want = [
        (2, 2, "1"),
        (2, 1, "-1/2"),
        (2, 0, "-1/2"),
        (1, 2, "-1"),
        (1, 1, "-3/2"),
        (1, 0, "1"),
        (0, 2, "4/9"),
        (0, 1, "7/9"),
        (0, 0, "23/18"),
    ];
    for (a, b, c) in want {
        assert_eq!(pc.coeff(a, b), parse(c).unwrap(), "u^{a} v^{b}");
    }
    assert_eq!(pc.iter().count(), want.len());
}

#[test]
fn cm_psi_at_a_point() {
    let psi = cm_psi(&point(), 4).unwrap();
    for (i, j, c) in [(1, 1, "-2"), (2, 1, "-1"), (1, 2, "-1/2"), (2, 2, "3/2"), (3, 3, "29/36"), (3, 2, "31/18")] {
        assert_eq!(psi.get(i, j), &parse(c).unwrap(), "u^-{i} v^-{j}");
    }
}

#[test]
fn kernel_of_a_two_dimensional_space() {
    // <(u + 1/2), 3 e^{-2u/3}>
    let w = QExpSpace::new(vec![(up(&[frac(1, 2), q(1)]), q(0)), (up(&[q(3)]), frac(-2, 3))]).unwrap();
    assert_eq!(w.wronskian(), up(&[q(2), q(1)]));
    let g = w.kernel_operator();
    let den = up(&[q(6), q(3)]);
    assert_eq!(g[0], RatFn::new(up(&[q(1), q(2)]), den.clone()));
    assert_eq!(g[1], RatFn::new(up(&[q(-2)]), den));
}
