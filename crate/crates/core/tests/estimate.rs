use ising_infmax::estimate::{estimate_influence, SamplerConfig};
use ising_infmax::influence::{global_influence, InfluenceQuery};
use ising_infmax::model::{IsingModel, PartialAssignment, Spin, WeightVector};

#[test]
fn cubic_graph_influence_within_three_errors() {
    // the 3-regular prism on 12 vertices: two 6-cycles joined by rungs
    let mut edges = Vec::new();
    for i in 0..6 {
        edges.push((i, (i + 1) % 6, 0.25));
        edges.push((6 + i, 6 + (i + 1) % 6, 0.25));
        edges.push((i, 6 + i, 0.25));
    }
    let m = IsingModel::new(vec![0.1; 12], edges).unwrap();
    assert_eq!(m.max_degree(), 3);
    let a = WeightVector::uniform(12, 1.0);
    let pins = PartialAssignment::from_pairs([(0, Spin::Plus), (9, Spin::Minus)]).unwrap();
    let exact = global_influence(&InfluenceQuery::global(&m, &a, &pins)).unwrap();
    let est = estimate_influence(&m, &a, &pins, &SamplerConfig::new(10_000, 5)).unwrap();
    assert!((est.value - exact).abs() <= 3.0 * est.std_error, "{est:?} vs {exact}");
    assert!(est.std_error > 0.0 && est.std_error < 0.2);
}
