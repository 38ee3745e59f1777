use proflow_web::{orbit, overlay, sign_grid, special, vector_field};

#[test]
fn sign_grid_rows() {
    let g = sign_grid("Lambda", -4.0, 4.0, 10).unwrap();
    assert_eq!(g.len(), 300);
    assert!(g.chunks(3).any(|r| r[2] == 1.0) && g.chunks(3).any(|r| r[2] == -1.0));
    assert_eq!(sign_grid("lambda", 0.01, 0.02, 1).unwrap(), vec![0.015, 0.015, 1.0]);
}

#[test]
fn vector_field_is_normalized() {
    let v = vector_field("Lambda", -1.0, 1.0, 8).unwrap();
    assert_eq!(v.len(), 4 * 64);
    for r in v.chunks(4) {
        let n = r[2].hypot(r[3]);
        assert!((n - 1.0).abs() < 1e-12 || n == 0.0);
    }
}

#[test]
fn orbit_keeps_the_invariant() {
    let o = orbit("Lambda", 0.3, -0.2, -1.0, 1.0, 21).unwrap();
    assert!(o.len() >= 3 * 10);
    for r in o.chunks(3) {
        assert!((r[1] * r[2] * (r[1] - r[2]) - 0.3 * -0.2 * 0.5).abs() < 1e-9);
    }
}

#[test]
fn overlays() {
    assert_eq!(overlay("c0", -4.0, 4.0, 50).unwrap().len(), 100);
    assert!(!overlay("pi", -4.0, 4.0, 50).unwrap().is_empty());
    assert!(overlay("nope", -4.0, 4.0, 50).is_err());
}

#[test]
fn dixon_values() {
    let s = special("sm", 0.3, 0.2).unwrap();
    let c = special("cm", 0.3, 0.2).unwrap();
    let (s3, c3) = (cube(s[0], s[1]), cube(c[0], c[1]));
    assert!((s3.0 + c3.0 - 1.0).abs() < 1e-12 && (s3.1 + c3.1).abs() < 1e-12);
    assert_eq!(special("cm", 0.0, 0.0).unwrap()[..2], [1.0, 0.0]);
    assert!(special("tan", 0.0, 0.0).is_err());
}

#[test]
fn bad_arguments_are_errors() {
    assert!(sign_grid("nope", -1.0, 1.0, 4).is_err());
    assert!(vector_field("Lambda", 1.0, -1.0, 4).is_err());
    assert!(orbit("Lambda", 0.1, 0.1, 1.0, 1.0, 10).is_err());
}

fn cube(re: f64, im: f64) -> (f64, f64) {
    let (a, b) = (re * re - im * im, 2.0 * re * im);
    (a * re - b * im, a * im + b * re)
}
