use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semiforge::fixtures::PLANES;
use semiforge::gf::naive::DenseMatrix;
use semiforge::gf::{Matrix, PrimeField, MAX_DIM};

fn random_matrix(rng: &mut ChaCha8Rng, f: PrimeField, n: usize) -> Matrix {
    let rows: Vec<Vec<u8>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(0..f.p())).collect())
        .collect();
    Matrix::from_rows(f, &rows).unwrap()
}

#[test]
fn det_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = PrimeField::new(3).unwrap();
    for _ in 0..1000 {
        let (a, b) = (random_matrix(&mut rng, f, 5), random_matrix(&mut rng, f, 5));
        assert_eq!(a.mul(&b).det(), f.mul(a.det(), b.det()));
    }
}

#[test]
fn inverses_of_random_and_fixture_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for p in [2u8, 3, 5] {
        let f = PrimeField::new(p).unwrap();
        for n in 2..=MAX_DIM {
            let id = Matrix::identity(f, n).unwrap();
            for _ in 0..50 {
                let m = random_matrix(&mut rng, f, n);
                match m.inverse() {
                    Ok(inv) => {
                        assert_eq!(m.mul(&inv), id);
                        assert_eq!(inv.mul(&m), id);
                    }
                    Err(_) => assert_eq!(m.det(), 0),
                }
            }
        }
    }
    let id = Matrix::identity(PrimeField::new(3).unwrap(), 5).unwrap();
    for plane in &PLANES {
        for m in plane.basis().matrices() {
            assert_eq!(m.mul(&m.inverse().unwrap()), id, "plane {}", plane.label);
        }
    }
}

#[test]
fn packed_agrees_with_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut compared = 0;
    for p in [2u8, 3, 5] {
        let f = PrimeField::new(p).unwrap();
        for n in 2..=MAX_DIM {
            for _ in 0..700 {
                let (a, b) = (random_matrix(&mut rng, f, n), random_matrix(&mut rng, f, n));
                let (da, db): (DenseMatrix, DenseMatrix) = (a.to_dense(), b.to_dense());
                assert_eq!(a.mul(&b), Matrix::from_dense(&da.mul(&db)));
                assert_eq!(a.det(), da.det());
                assert_eq!(a.rank(), da.rank());
                assert_eq!(
                    a.inverse().ok(),
                    da.inverse().map(|d| Matrix::from_dense(&d))
                );
                compared += 1;
            }
        }
    }
    assert!(compared >= 10_000);
}
