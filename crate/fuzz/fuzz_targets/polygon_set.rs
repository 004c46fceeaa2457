#![no_main]

use greenpot::geometry::ComplexPoint;
use greenpot::sets::CompactSet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() < 2 {
        return;
    }
    let resolution = 16 + data[0] as usize;
    let vertices: Vec<ComplexPoint> = data[1..]
        .chunks_exact(16)
        .map(|c| {
            let x = f64::from_le_bytes(c[..8].try_into().unwrap());
            let y = f64::from_le_bytes(c[8..].try_into().unwrap());
            ComplexPoint::new(x, y)
        })
        .collect();
    let Ok(set) = CompactSet::jordan_polygon(vertices, resolution) else {
        return;
    };
    let z = ComplexPoint::new(0.1, -0.2);
    let p = set.project(z);
    assert!(set.contains(p));
    assert!((set.project(p) - p).norm() < 1e-9);
    for k in 0..8 {
        let b = set.boundary_point(k as f64 / 8.0);
        assert!(b.norm() < 1.0);
    }
    let (v, at) = set.boundary_argmin(|w| (w - z).norm());
    assert!(v.is_finite() && at.norm() < 1.0);
});
