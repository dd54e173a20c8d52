use nagata_core::field::GaloisField;
use nagata_core::forms::{base_locus, is_smooth_zero_dim, FormSystem};
use nagata_core::mpoly::MPoly;

fn cuspidal(p: u64) -> FormSystem<GaloisField> {
    let k = GaloisField::prime(p).unwrap();
    let polys = ["(y+z)^3 + x*z^2", "x^3 + y^2*z"]
        .iter()
        .map(|s| MPoly::parse(k.clone(), &["x", "y", "z"], s).unwrap())
        .collect();
    FormSystem::from_polys(polys).unwrap()
}

#[test]
fn cuspidal_pencil_over_f5_has_an_octic_orbit() {
    let sys = cuspidal(5);
    assert!(is_smooth_zero_dim(&sys).unwrap().is_smooth());
    let groups = base_locus(&sys, 8).unwrap();
    let shape: Vec<(u32, usize)> = groups.iter().map(|g| (g.degree, g.points.len())).collect();
    assert_eq!(shape.iter().map(|(_, n)| n).sum::<usize>(), 9);
    assert_eq!(shape, vec![(1, 1), (8, 8)]);
    assert_eq!(groups[1].field.size(), 5u64.pow(8));
}

#[test]
fn base_points_counted_over_every_small_prime() {
    for p in [2, 3, 7] {
        let groups = base_locus(&cuspidal(p), 8).unwrap();
        let total: usize = groups.iter().map(|g| g.points.len()).sum();
        assert_eq!(total, 9, "p = {p}");
    }
}
