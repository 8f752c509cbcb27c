use dunkl_appell::{AppellFamily32, DunklContext32, OperatorSpec32};

#[test]
fn f32_pipeline_agrees_with_f64_to_single_precision() {
    let ctx = DunklContext32::new(0.5).unwrap();
    let fam = AppellFamily32::gould_hopper(ctx, 0.5, 1, 32).unwrap();
    let spec = OperatorSpec32::new(fam, 10, 1e-6, 10_000).unwrap();

    let ctx64 = dunkl_appell::DunklContext64::new(0.5).unwrap();
    let fam64 = dunkl_appell::AppellFamily64::gould_hopper(ctx64, 0.5, 1, 64).unwrap();
    let spec64 = dunkl_appell::OperatorSpec64::new(fam64, 10, 1e-14, 100_000).unwrap();

    for x in [0.0f32, 0.5, 1.0, 2.0] {
        let w = spec.weights(x).unwrap();
        assert!((w.total_mass() + w.tail_mass - 1.0).abs() <= 1e-5);
        let k = spec.apply(|t| t.sin(), x).unwrap();
        let k64 = spec64.apply(|t| t.sin(), x as f64).unwrap();
        assert!((k as f64 - k64).abs() <= 1e-5, "x={x}");
        let m = spec.moments_closed(x).unwrap();
        let m64 = spec64.moments_closed(x as f64).unwrap();
        assert!((m.m2 as f64 - m64.m2).abs() <= 1e-5 * (1.0 + m64.m2));
    }
}
