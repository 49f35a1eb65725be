#![allow(dead_code)]

use qfold::cartan::{validate_cartan, CartanData, Weight};

pub fn a1() -> CartanData {
    validate_cartan(&[vec![2]], None).unwrap()
}

pub fn a2() -> CartanData {
    validate_cartan(&[vec![2, -1], vec![-1, 2]], None).unwrap()
}

pub fn c2() -> CartanData {
    validate_cartan(&[vec![2, -1], vec![-2, 2]], None).unwrap()
}

pub fn g2() -> CartanData {
    validate_cartan(&[vec![2, -1], vec![-3, 2]], None).unwrap()
}

pub fn b3() -> CartanData {
    validate_cartan(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]], None).unwrap()
}

pub fn affine_a1() -> CartanData {
    validate_cartan(&[vec![2, -2], vec![-2, 2]], None).unwrap()
}

pub fn w(c: &[i64]) -> Weight {
    Weight::from_coords(c.to_vec())
}

/// (datum, highest weight, depth) for the relation suite.
pub fn suite() -> Vec<(&'static str, CartanData, Weight, i64)> {
    vec![
        ("A1 l=3", a1(), w(&[3]), 100),
        ("A2 l=(1,1)", a2(), w(&[1, 1]), 100),
        ("A2 l=(2,0)", a2(), w(&[2, 0]), 100),
        ("C2 l=b1", c2(), w(&[1, 0]), 100),
        ("C2 l=b2", c2(), w(&[0, 1]), 100),
        ("C2 l=b1+b2", c2(), w(&[1, 1]), 100),
        ("G2 l=short", g2(), w(&[0, 1]), 100),
        ("G2 l=long", g2(), w(&[1, 0]), 100),
        ("B3 l=w1", b3(), w(&[1, 0, 0]), 100),
        ("B3 l=w3", b3(), w(&[0, 0, 1]), 100),
        ("B3 l=w2", b3(), w(&[0, 1, 0]), 100),
        ("affine A1 l=b0", affine_a1(), w(&[1, 0]), 4),
        ("affine A1 l=b0+b1", affine_a1(), w(&[1, 1]), 4),
    ]
}
